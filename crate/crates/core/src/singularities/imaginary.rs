//! Poles of the asymmetric iterates on the imaginary axis `q = ri`.

use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};
use crate::models::ModelId;
use crate::numeric::BigFloat;

use super::families::omega_poly;
use super::roots::find_roots;

fn require_even(model: ModelId, n: usize) -> Result<()> {
    if model.is_symmetric() {
        return Err(Error::UnsupportedModel {
            model,
            operation: "imaginary_axis_root",
        });
    }
    if n < 2 || n % 2 == 1 {
        return Err(Error::InvalidArgument(format!("n = {n} must be even and at least 2")));
    }
    Ok(())
}

/// Real restriction along `q = ri` (with `R = r^n`):
///
/// - D: `R² - r² + 4r²R² - r²R⁴ + r⁴R²`, a square root of `ω¹_n(ri)`.
/// - E: `4R⁴r² + 4r² - 4R²r² + R⁴r⁴ + R⁴ + r⁴ + 1 + (r² + 1 - R⁴ - R⁴r²)·√(1 + 10r² + r⁴)`,
///   a real multiple of `χ̄_n(ri)`.
pub fn imaginary_restriction(model: ModelId, n: usize, r: &BigFloat) -> Result<BigFloat> {
    require_even(model, n)?;
    let p = r.prec();
    let r2 = Float::with_val(p, r.square_ref());
    let r4 = Float::with_val(p, r2.square_ref());
    let big_r2 = Float::with_val(p, r.pow(n as u32)).square();
    let big_r4 = Float::with_val(p, big_r2.square_ref());
    Ok(match model {
        ModelId::D => {
            Float::with_val(p, &big_r2 - &r2) + Float::with_val(p, &r2 * &big_r2) * 4u32
                - Float::with_val(p, &r2 * &big_r4)
                + Float::with_val(p, &r4 * &big_r2)
        }
        _ => {
            let root = (Float::with_val(p, &r2 * 10u32) + &r4 + 1u32).sqrt();
            let a = Float::with_val(p, &big_r4 * &r2) * 4u32 + Float::with_val(p, &r2 * 4u32)
                - Float::with_val(p, &big_r2 * &r2) * 4u32
                + Float::with_val(p, &big_r4 * &r4)
                + &big_r4
                + &r4
                + 1u32;
            let b = Float::with_val(p, &r2 + 1u32) - &big_r4 - Float::with_val(p, &big_r4 * &r2);
            a + b * root
        }
    })
}

/// The root `r ∈ (1, 2)` of [`imaginary_restriction`], by bisection to
/// `prec` bits.
pub fn imaginary_axis_root(model: ModelId, n: usize, prec: u32) -> Result<BigFloat> {
    require_even(model, n)?;
    let mut lo = Float::with_val(prec, 1);
    let mut hi = Float::with_val(prec, 2);
    let f_lo = imaginary_restriction(model, n, &lo)?;
    let f_hi = imaginary_restriction(model, n, &hi)?;
    if f_lo.is_sign_negative() == f_hi.is_sign_negative() {
        return Err(Error::NoSignChange { lo: 1.0, hi: 2.0 });
    }
    let lo_negative = f_lo.is_sign_negative();
    for _ in 0..prec {
        let mid = Float::with_val(prec, &lo + &hi) / 2u32;
        if mid == lo || mid == hi {
            break;
        }
        let v = imaginary_restriction(model, n, &mid)?;
        if v.is_zero() {
            return Ok(mid);
        }
        if v.is_sign_negative() == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Float::with_val(prec, &lo + &hi) / 2u32)
}

/// Sign changes in the coefficient sequence of the restriction viewed as a
/// polynomial in `R²` with `r` fixed. Descartes' rule bounds the number of
/// positive roots `R` by this count.
pub fn descartes_sign_changes(model: ModelId, r: f64) -> Result<usize> {
    let r2 = r * r;
    let r4 = r2 * r2;
    let coeffs: Vec<f64> = match model {
        // -r²R⁴ + (1 + 4r² + r⁴)R² - r²
        ModelId::D => vec![-r2, 1.0 + 4.0 * r2 + r4, -r2],
        // (a + b√s)(a - b√s) for the model E restriction, in powers of R².
        ModelId::E => {
            let a = 1.0 + r2 + r4;
            let b = 1.0 + 4.0 * r2 + r4;
            let r6 = r4 * r2;
            let r8 = r4 * r4;
            vec![
                -r2 * a,
                -2.0 * r2 * b,
                1.0 + 10.0 * r2 + 24.0 * r4 + 10.0 * r6 + r8,
                -2.0 * r2 * b,
                -r2 * a,
            ]
        }
        _ => {
            return Err(Error::UnsupportedModel {
                model,
                operation: "descartes_sign_changes",
            })
        }
    };
    let signs: Vec<bool> = coeffs.iter().filter(|c| **c != 0.0).map(|c| *c > 0.0).collect();
    Ok(signs.windows(2).filter(|w| w[0] != w[1]).count())
}

/// Roots `ri` of `ω^index_n` with `r > 1`, found numerically. Empty for
/// the families that have no poles on the imaginary axis.
pub fn imaginary_axis_roots(model: ModelId, index: u8, n: usize, prec: u32) -> Result<Vec<BigFloat>> {
    let rs = find_roots(&omega_poly(model, index, n)?, prec)?;
    let tol = Float::with_val(prec, 1) >> (prec / 4);
    Ok(rs
        .roots
        .iter()
        .filter(|r| Float::with_val(prec, r.value.re.abs_ref()) < tol && r.value.im > 1)
        .map(|r| r.value.im.clone())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::BigComplex;

    #[test]
    fn endpoint_values() {
        let one = Float::with_val(128, 1);
        let two = Float::with_val(128, 2);
        for n in [2, 4, 6] {
            assert_eq!(imaginary_restriction(ModelId::D, n, &one).unwrap(), 4);
            assert!((imaginary_restriction(ModelId::E, n, &one).unwrap() - 8u32).abs() < 1e-30);
        }
        assert_eq!(imaginary_restriction(ModelId::D, 2, &two).unwrap(), -500);
        let e2 = imaginary_restriction(ModelId::E, 2, &two).unwrap().to_f64();
        let big_r: f64 = 4.0;
        let want = 33.0 * big_r.powi(4) + 33.0 - 16.0 * big_r.powi(2) + (5.0 - 5.0 * big_r.powi(4)) * 57f64.sqrt();
        assert!((e2 - want).abs() < 1e-9 * want.abs());
    }

    #[test]
    fn bisection_root_annihilates_omega_one() {
        for m in ModelId::ASYMMETRIC {
            for n in [2, 4, 6, 8] {
                let r = imaginary_axis_root(m, n, 256).unwrap();
                assert!(r > 1 && r < 2);
                let q = BigComplex::new(Float::new(256), r);
                let w = omega_poly(m, 1, n).unwrap().eval_complex(&q).abs().to_f64();
                assert!(w < 1e-40, "{m} n={n}: {w}");
            }
        }
    }

    #[test]
    fn descartes_two_changes() {
        for m in ModelId::ASYMMETRIC {
            for r in [1.01, 1.3, 1.9, 3.0] {
                assert_eq!(descartes_sign_changes(m, r).unwrap(), 2);
            }
        }
    }

    #[test]
    fn odd_n_rejected() {
        assert!(imaginary_axis_root(ModelId::D, 3, 64).is_err());
        assert!(imaginary_axis_root(ModelId::A, 2, 64).is_err());
    }
}
