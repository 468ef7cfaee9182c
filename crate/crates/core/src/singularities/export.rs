//! CSV and SVG output of root sets.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

use super::roots::{Plane, RootSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Csv,
    Svg,
}

impl std::str::FromStr for ExportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ExportFormat::Csv),
            "svg" => Ok(ExportFormat::Svg),
            _ => Err(Error::InvalidArgument(format!("unknown export format {s:?}"))),
        }
    }
}

pub const CSV_HEADER: &str = "re,im,n,family,plane";

/// `x` with 17 significant digits, positional unless the exponent is far
/// from zero.
pub fn format_sig17(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.16e}");
    let (mant, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if !(-7..21).contains(&exp) {
        return sci;
    }
    let negative = mant.starts_with('-');
    let digits: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if exp < 0 {
        out.push_str("0.");
        out.extend(std::iter::repeat_n('0', (-exp - 1) as usize));
        out.push_str(&digits);
    } else {
        let int_len = exp as usize + 1;
        if int_len >= digits.len() {
            out.push_str(&digits);
            out.extend(std::iter::repeat_n('0', int_len - digits.len()));
        } else {
            out.push_str(&digits[..int_len]);
            out.push('.');
            out.push_str(&digits[int_len..]);
        }
    }
    out
}

pub fn to_csv(rootsets: &[RootSet]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for rs in rootsets {
        for r in &rs.roots {
            let (re, im) = r.value.to_f64();
            let _ = writeln!(
                s,
                "{},{},{},{},{}",
                format_sig17(re),
                format_sig17(im),
                rs.n,
                rs.family,
                rs.plane.label()
            );
        }
    }
    s
}

pub fn to_svg(rootsets: &[RootSet]) -> String {
    let plane = rootsets.first().map_or(Plane::Q, |r| r.plane);
    let radius: f64 = match plane {
        Plane::Q => 1.0,
        Plane::T => 0.5,
    };
    let far = rootsets
        .iter()
        .flat_map(|rs| rs.roots.iter())
        .map(|r| r.value.to_c64().norm())
        .filter(|m| m.is_finite())
        .fold(0.0_f64, f64::max);
    let half = (1.5 * radius).max(1.05 * far);
    let dot = half / 150.0;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="600" height="600" viewBox="{:.6} {:.6} {:.6} {:.6}">"#,
        -half,
        -half,
        2.0 * half,
        2.0 * half
    );
    let _ = writeln!(
        s,
        r##"<circle class="overlay" cx="0" cy="0" r="{radius}" fill="none" stroke="#888888" stroke-width="{:.6}"/>"##,
        dot / 2.0
    );
    for rs in rootsets {
        for r in &rs.roots {
            let (re, im) = r.value.to_f64();
            let _ = writeln!(
                s,
                r##"<circle class="{} n{}" cx="{:.6}" cy="{:.6}" r="{:.6}" fill="#1f4e9c"/>"##,
                rs.family, rs.n, re, -im, dot
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

/// Write `rootsets` to `path`.
pub fn export_points(rootsets: &[RootSet], format: ExportFormat, path: &Path) -> Result<()> {
    let body = match format {
        ExportFormat::Csv => to_csv(rootsets),
        ExportFormat::Svg => to_svg(rootsets),
    };
    std::fs::write(path, body).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
