use rug::ops::Pow;
use rug::{Float, Integer};

/// `x` rounded to `digits` places after the decimal point.
pub fn fixed(x: &Float, digits: usize) -> String {
    let scale = Integer::from(10).pow(digits as u32);
    let scaled = Float::with_val(x.prec() + 64, x * &scale);
    let n = scaled.round().to_integer().unwrap_or_default();
    let negative = n.cmp0().is_lt();
    let mut s = n.abs().to_string();
    if s.len() <= digits {
        s = "0".repeat(digits + 1 - s.len()) + &s;
    }
    let (int, frac) = s.split_at(s.len() - digits);
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

/// Three significant digits in scientific notation.
pub fn sci(x: &Float) -> String {
    if x.is_zero() {
        return "0".into();
    }
    format!("{x:.2e}")
}
