//! Enumeration through normalized reciprocals of the iterates.
//!
//! With `1/t = q + 1/q` the reciprocal iterates satisfy linear recurrences
//! with constant coefficients. Scaled by the right power of `t` they become
//! integer power series with constant term 1, and the recurrences only
//! shift and add.
//!
//! Symmetric models, `Z_n = t^n / Y_n(1)`:
//!
//! ```text
//! Z_n = Z_{n-1} - t²·Z_{n-2} - e·t^n        (n ≥ 2)
//! ```
//!
//! Asymmetric models, with `χ_n, Y_+(χ_n), Υ_n, X_+(Υ_n)` normalized by
//! `t^{2n}, t^{2n+1}, t^{2n}, t^{2n+1}`:
//!
//! ```text
//! Zχ_n  = ZYχ_{n-1} - t²·Zχ_{n-1}  - n·t^{2n}
//! ZYχ_n = Zχ_n      - t²·ZYχ_{n-1} - e·t^{2n+1}
//! ZΥ_n  = ZXΥ_{n-1} - t²·ZΥ_{n-1}  - e·t^{2n}
//! ZXΥ_n = ZΥ_n      - t²·ZXΥ_{n-1} - n·t^{2n+1}
//! ```
//!
//! where `e` and `n` flag the presence of the E and N steps. Only the
//! starting values need a square root.

use std::time::Instant;

use rug::Integer;

use crate::error::{Error, Result};
use crate::kernel_iter;
use crate::models::{ModelId, ReducedKernel, Side, E, N};
use crate::naive;
use crate::series::TruncatedSeries;

type Z = TruncatedSeries<Integer>;

/// The constant-coefficient recurrence `Z_n = Z_{n-1} - t²Z_{n-2} - e·t^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymmetricRecurrence {
    pub model: ModelId,
    /// Coefficient of `t^n` (0 or -1).
    pub forcing: i64,
}

pub fn z_recurrence_symmetric(model: ModelId) -> Result<SymmetricRecurrence> {
    if !model.is_symmetric() {
        return Err(Error::UnsupportedModel {
            model,
            operation: "z_recurrence_symmetric",
        });
    }
    let e = i64::from(model.step_set().contains(E));
    Ok(SymmetricRecurrence { model, forcing: -e })
}

impl SymmetricRecurrence {
    /// `Z_n` from `Z_{n-1}` and `Z_{n-2}`, keeping `order` coefficients.
    pub fn apply(&self, n: usize, z1: &Z, z2: &Z, order: usize) -> Z {
        let mut z = z1.sub(&z2.shift(2)).truncate(order);
        z.add_monomial(self.forcing, n);
        z
    }
}

/// `t / u·r(u)` at `u = 1`: the reciprocal of the small root scaled by `t`,
/// equal to `(b + √(b² - 4t²w(1)))/2` with `b = 1 - e·t`.
fn normalized_start(rk: &ReducedKernel, order: usize) -> Result<Z> {
    let e = rk.e;
    let w1: i64 = rk.w.iter().sum();
    let disc = Z::from_i64s(&[1, -2 * e, e * e - 4 * w1], order);
    let s = disc.sqrt_one()?;
    let b = Z::from_i64s(&[1, -e], order);
    let sum = b.add(&s);
    let half = sum
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| crate::series::Coefficient::div_exact(c, &Integer::from(2), i))
        .collect::<Result<Vec<_>>>()?;
    Ok(Z::new(half))
}

/// `Z_0 .. Z_{n_max}` mod `t^order` for a symmetric model.
pub fn z_sequence_symmetric(model: ModelId, n_max: usize, order: usize) -> Result<Vec<Z>> {
    let rec = z_recurrence_symmetric(model)?;
    let mut zs = vec![Z::one(order)];
    if n_max >= 1 {
        zs.push(normalized_start(&ReducedKernel::new(model, Side::Y), order)?);
    }
    for n in 2..=n_max {
        let z = rec.apply(n, &zs[n - 1], &zs[n - 2], order);
        zs.push(z);
    }
    Ok(zs)
}

/// The four normalized reciprocal families of an asymmetric model.
#[derive(Clone, Debug)]
pub struct AsymmetricZ {
    pub chi: Vec<Z>,
    pub y_chi: Vec<Z>,
    pub upsilon: Vec<Z>,
    pub x_upsilon: Vec<Z>,
}

/// Normalized reciprocals for `0 ≤ n ≤ n_max`, mod `t^order`.
pub fn z_sequence_asymmetric(model: ModelId, n_max: usize, order: usize) -> Result<AsymmetricZ> {
    let s = model.step_set();
    let (e, nf) = (i64::from(s.contains(E)), i64::from(s.contains(N)));
    let mut chi = vec![Z::one(order)];
    let mut y_chi = vec![normalized_start(&ReducedKernel::new(model, Side::Y), order)?];
    let mut upsilon = vec![Z::one(order)];
    let mut x_upsilon = vec![normalized_start(&ReducedKernel::new(model, Side::X), order)?];
    for k in 1..=n_max {
        let mut x = y_chi[k - 1].sub(&chi[k - 1].shift(2)).truncate(order);
        x.add_monomial(-nf, 2 * k);
        let mut y = x.sub(&y_chi[k - 1].shift(2)).truncate(order);
        y.add_monomial(-e, 2 * k + 1);
        chi.push(x);
        y_chi.push(y);
        let mut u = x_upsilon[k - 1].sub(&upsilon[k - 1].shift(2)).truncate(order);
        u.add_monomial(-e, 2 * k);
        let mut v = u.sub(&x_upsilon[k - 1].shift(2)).truncate(order);
        v.add_monomial(-nf, 2 * k + 1);
        upsilon.push(u);
        x_upsilon.push(v);
    }
    Ok(AsymmetricZ {
        chi,
        y_chi,
        upsilon,
        x_upsilon,
    })
}

// 1/z to `len` coefficients (empty when nothing is needed).
fn inv(z: &Z, len: usize) -> Result<Z> {
    if len == 0 {
        return Ok(Z::zero(0));
    }
    z.truncate(len).reciprocal()
}

/// Output of [`fast_series_symmetric`].
#[derive(Clone, Debug)]
pub struct SymmetricSeries {
    /// `S(t)` mod `t^order`.
    pub total: Z,
    /// `S_{0,1}(t)` mod `t^order`.
    pub axis: Z,
}

/// `S(t)` and `S_{0,1}(t)` mod `t^order` via the shift-add recurrence.
pub fn fast_series_symmetric(model: ModelId, order: usize) -> Result<SymmetricSeries> {
    if order == 0 {
        return Err(Error::InsufficientOrder { have: 0, need: 1 });
    }
    // Σ (-1)^n Y_nY_{n+1} is needed mod t^m; the n-th term is
    // t^{2n+1}/(Z_nZ_{n+1}).
    let m = order + 1;
    let terms = (m - 1).div_ceil(2);
    let zs = z_sequence_symmetric(model, terms, m + 1)?;
    let need = |n: usize| (m + 1).saturating_sub(2 * n);
    let mut sum = Z::zero(m);
    let mut inv_prev = inv(&zs[0], need(0))?;
    for n in 0..terms {
        let len = m - 2 * n - 1;
        let inv_next = inv(&zs[n + 1], need(n + 1))?;
        let p = inv_prev.truncate(len).mul(&inv_next.truncate(len)).shift(2 * n + 1);
        let p = Z::from_coeffs(p.into_coeffs(), m);
        sum = if n % 2 == 0 { sum.add(&p) } else { sum.sub(&p) };
        inv_prev = inv_next;
    }
    let axis = sum.unshift(1)?;
    let total = kernel_iter::assemble_total(model, &sum.truncate(order).scale_i64(2), order)?;
    Ok(SymmetricSeries { total, axis })
}

/// `S(t)` mod `t^order` for an asymmetric model via the four interleaved
/// recurrences.
pub fn fast_series_asymmetric(model: ModelId, order: usize) -> Result<Z> {
    if order == 0 {
        return Err(Error::InsufficientOrder { have: 0, need: 1 });
    }
    let m = order;
    // Terms have valuation 4k+1.
    let terms = (m - 1).div_ceil(4);
    let z = z_sequence_asymmetric(model, terms, m + 3)?;
    let long = |k: usize| (m + 3).saturating_sub(4 * k);
    let short = |k: usize| m.saturating_sub(4 * k + 1);
    let mut boundary = Z::zero(m);
    let mut ix_prev = inv(&z.chi[0], long(0))?;
    let mut iu_prev = inv(&z.upsilon[0], long(0))?;
    for k in 0..terms {
        let len = short(k);
        let ix_next = inv(&z.chi[k + 1], long(k + 1))?;
        let iu_next = inv(&z.upsilon[k + 1], long(k + 1))?;
        let iy = inv(&z.y_chi[k], len)?;
        let iv = inv(&z.x_upsilon[k], len)?;
        // (χ_k - χ_{k+1})·Y_+(χ_k) = t^{4k+1}(1/Zχ_k - t²/Zχ_{k+1})/ZYχ_k
        let dx = ix_prev
            .truncate(len)
            .sub(&Z::from_coeffs(ix_next.shift(2).into_coeffs(), len));
        let du = iu_prev
            .truncate(len)
            .sub(&Z::from_coeffs(iu_next.shift(2).into_coeffs(), len));
        let term = dx.mul(&iy).add(&du.mul(&iv)).shift(4 * k + 1);
        boundary = boundary.add(&Z::from_coeffs(term.into_coeffs(), m));
        ix_prev = ix_next;
        iu_prev = iu_next;
    }
    kernel_iter::assemble_total(model, &boundary, order)
}

/// Which enumeration path to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Naive,
    Iterated,
    Fast,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Naive, Method::Iterated, Method::Fast];

    pub fn name(self) -> &'static str {
        match self {
            Method::Naive => "naive",
            Method::Iterated => "iterated",
            Method::Fast => "fast",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(Method::Naive),
            "iterated" | "kernel" => Ok(Method::Iterated),
            "fast" => Ok(Method::Fast),
            other => Err(Error::InvalidArgument(format!("unknown method {other:?}"))),
        }
    }
}

/// `S_0 .. S_{terms-1}` by the chosen method.
pub fn enumerate(model: ModelId, terms: usize, method: Method) -> Result<Vec<Integer>> {
    if terms == 0 {
        return Ok(Vec::new());
    }
    let series = match method {
        Method::Naive => return Ok(naive::count_all(model, terms - 1)),
        Method::Iterated => kernel_iter::gf_total::<Integer>(model, terms)?,
        Method::Fast if model.is_symmetric() => fast_series_symmetric(model, terms)?.total,
        Method::Fast => fast_series_asymmetric(model, terms)?,
    };
    Ok(series.into_coeffs())
}

/// One timing measurement.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub model: ModelId,
    pub n: usize,
    pub method: Method,
    pub seconds: f64,
    /// Peak resident set size during the run, where the platform reports it.
    pub bytes: Option<u64>,
}

fn reset_peak_rss() -> bool {
    std::fs::write("/proc/self/clear_refs", "5").is_ok()
}

fn peak_rss() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    let kb: u64 = line.split_whitespace().nth(1)?.parse().ok()?;
    Some(kb * 1024)
}

/// Time each method at each `N`.
pub fn benchmark(model: ModelId, n_list: &[usize], methods: &[Method]) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for &n in n_list {
        for &method in methods {
            let can_reset = reset_peak_rss();
            let start = Instant::now();
            let out = enumerate(model, n, method)?;
            let seconds = start.elapsed().as_secs_f64();
            drop(out);
            rows.push(BenchRow {
                model,
                n,
                method,
                seconds,
                bytes: if can_reset { peak_rss() } else { None },
            });
        }
    }
    Ok(rows)
}

/// Least-squares slope of `ln(seconds)` against `ln(N)` for one method.
pub fn loglog_slope(rows: &[BenchRow], method: Method) -> Option<f64> {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.method == method && r.seconds > 0.0)
        .map(|r| ((r.n as f64).ln(), r.seconds.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{op_counts, reset_op_counts};

    fn ints(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| Integer::from(x)).collect()
    }

    #[test]
    fn recurrence_descriptors() {
        assert_eq!(z_recurrence_symmetric(ModelId::A).unwrap().forcing, 0);
        assert_eq!(z_recurrence_symmetric(ModelId::B).unwrap().forcing, -1);
        assert_eq!(z_recurrence_symmetric(ModelId::C).unwrap().forcing, -1);
        assert!(z_recurrence_symmetric(ModelId::D).is_err());
    }

    #[test]
    fn z_matches_iterates() {
        let order = 24;
        for m in ModelId::SYMMETRIC {
            let zs = z_sequence_symmetric(m, 12, 2 * order).unwrap();
            let ys = kernel_iter::iterate_symmetric::<Integer>(m, 12, order).unwrap();
            for (n, z) in zs.iter().enumerate().take(13) {
                assert_eq!(z.coeff(0), 1);
                let y = z.truncate(order - n).reciprocal().unwrap().shift(n);
                assert_eq!(y, ys.items[n], "model {m} n {n}");
            }
        }
    }

    #[test]
    fn asymmetric_z_matches_iterates() {
        let order = 30;
        for m in ModelId::ASYMMETRIC {
            let z = z_sequence_asymmetric(m, 6, 2 * order).unwrap();
            let it = kernel_iter::iterate_asymmetric::<Integer>(m, 6, order).unwrap();
            for k in 0..=6 {
                let back = |zz: &Z, s: usize| zz.truncate(order - s).reciprocal().unwrap().shift(s);
                assert_eq!(back(&z.chi[k], 2 * k), it.chi.items[k]);
                assert_eq!(back(&z.y_chi[k], 2 * k + 1), it.y_plus_of_chi.items[k]);
                assert_eq!(back(&z.upsilon[k], 2 * k), it.upsilon.items[k]);
                assert_eq!(back(&z.x_upsilon[k], 2 * k + 1), it.x_plus_of_upsilon.items[k]);
            }
        }
    }

    #[test]
    fn recurrence_is_shift_add_only() {
        let order = 40;
        reset_op_counts();
        z_sequence_symmetric(ModelId::C, 20, order).unwrap();
        let c = op_counts();
        assert_eq!((c.mul, c.reciprocal, c.divide, c.sqrt), (0, 0, 0, 1));
        reset_op_counts();
        z_sequence_asymmetric(ModelId::E, 10, order).unwrap();
        let c = op_counts();
        assert_eq!((c.mul, c.reciprocal, c.divide, c.sqrt), (0, 0, 0, 2));
    }

    #[test]
    fn table_rows_fast() {
        let got = |m| enumerate(m, 11, Method::Fast).unwrap();
        assert_eq!(
            got(ModelId::A),
            ints(&[1, 1, 3, 7, 21, 55, 165, 457, 1371, 3909, 11727])
        );
        assert_eq!(
            got(ModelId::C),
            ints(&[1, 3, 13, 59, 279, 1341, 6527, 31995, 157659, 779601, 3864985])
        );
        assert_eq!(got(ModelId::D), ints(&[1, 1, 2, 4, 10, 23, 61, 153, 418, 1100, 3064]));
        assert_eq!(
            got(ModelId::E),
            ints(&[1, 2, 7, 24, 91, 339, 1316, 5064, 19876, 77655, 306653])
        );
    }

    #[test]
    fn small_orders() {
        for m in ModelId::ALL {
            for n in 1..8 {
                assert_eq!(enumerate(m, n, Method::Fast).unwrap(), naive::count_all(m, n - 1));
            }
        }
    }

    #[test]
    fn axis_series_matches_dp() {
        let s = fast_series_symmetric(ModelId::B, 20).unwrap();
        assert_eq!(
            s.axis.into_coeffs(),
            naive::count_axis(ModelId::B, 19, naive::Axis::YAxis)
        );
    }

    #[test]
    fn slope_fit() {
        let rows: Vec<BenchRow> = [(10, 1.0), (20, 8.0), (40, 64.0)]
            .iter()
            .map(|&(n, s)| BenchRow {
                model: ModelId::A,
                n,
                method: Method::Fast,
                seconds: s,
                bytes: None,
            })
            .collect();
        assert!((loglog_slope(&rows, Method::Fast).unwrap() - 3.0).abs() < 1e-12);
        assert_eq!(loglog_slope(&rows, Method::Naive), None);
    }
}
