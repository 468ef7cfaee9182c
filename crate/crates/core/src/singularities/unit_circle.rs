//! Restrictions of the singularity polynomials to the unit circle.
//!
//! For a palindromic `p` of degree `d`, `e^{-idθ/2}·p(e^{iθ})` is the real
//! function `Σ c_k cos((k - d/2)θ)`; roots on the circle sit at its zeros.

use rug::float::Constant;
use rug::Float;

use crate::error::{Error, Result};
use crate::models::ModelId;
use crate::numeric::BigFloat;

use super::poly::IntPolynomial;

/// `φ_model(θ)` for the symmetric models:
///
/// ```text
/// φ_A = X + 2c² - 3,                                    X = cos(2nθ)
/// φ_B = X² + (2c² - c - 3)X + 2c³ - 4c² - c + 4,          X = cos(nθ)
/// φ_C = 2(2c - 1)X² + (4c² - 2c - 6)X + 4c³ - 8c² - 6c + 12
/// ```
///
/// with `c = cos θ`. Up to a positive constant these are the circle
/// restrictions of `σ_n`.
pub fn unit_circle_phi(model: ModelId, n: usize, theta: &BigFloat) -> Result<BigFloat> {
    let p = theta.prec();
    let c = Float::with_val(p, theta.cos_ref());
    let c2 = Float::with_val(p, c.square_ref());
    let c3 = Float::with_val(p, &c2 * &c);
    let angle = |k: usize| Float::with_val(p, theta * k as u32).cos();
    Ok(match model {
        ModelId::A => angle(2 * n) + c2 * 2u32 - 3u32,
        ModelId::B => {
            let x = angle(n);
            let lin = Float::with_val(p, &c2 * 2u32) - &c - 3u32;
            let cst = Float::with_val(p, &c3 * 2u32) - Float::with_val(p, &c2 * 4u32) - &c + 4u32;
            Float::with_val(p, x.square_ref()) + lin * &x + cst
        }
        ModelId::C => {
            let x = angle(n);
            let quad = (Float::with_val(p, &c * 4u32) - 2u32) * Float::with_val(p, x.square_ref());
            let lin = Float::with_val(p, &c2 * 4u32) - Float::with_val(p, &c * 2u32) - 6u32;
            let cst =
                Float::with_val(p, &c3 * 4u32) - Float::with_val(p, &c2 * 8u32) - Float::with_val(p, &c * 6u32) + 12u32;
            quad + lin * x + cst
        }
        _ => {
            return Err(Error::UnsupportedModel {
                model,
                operation: "unit_circle_phi",
            })
        }
    })
}

/// Circle restriction of an arbitrary palindromic polynomial after
/// dropping factors of `q`: `Σ c_k cos((k - d/2)θ)`.
pub fn konvalina_phi(p: &IntPolynomial, theta: &BigFloat) -> Result<BigFloat> {
    let p = p.strip_low_zeros();
    if !p.is_palindromic() {
        return Err(Error::InvalidArgument("polynomial is not palindromic".into()));
    }
    let prec = theta.prec();
    let d = p.degree().unwrap_or(0) as i64;
    let mut acc = Float::new(prec);
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        // (k - d/2)θ = (2k - d)θ/2
        let arg = Float::with_val(prec, theta * (2 * k as i64 - d)) / 2u32;
        acc += arg.cos() * c;
    }
    Ok(acc)
}

/// `π - arccos(√2 - 1/2)`: on `(0, π)` model B's circle roots lie in
/// `[b_band_lower_edge, π)`.
pub fn b_band_lower_edge(prec: u32) -> BigFloat {
    let s = Float::with_val(prec, 2).sqrt() - Float::with_val(prec, 0.5);
    Float::with_val(prec, Constant::Pi) - s.acos()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::singularities::sigma_poly;

    fn f(x: f64) -> BigFloat {
        Float::with_val(128, x)
    }

    #[test]
    fn phi_a_values() {
        for n in 1..6 {
            assert!(unit_circle_phi(ModelId::A, n, &f(0.0)).unwrap().is_zero());
        }
        let half_pi = Float::with_val(128, Constant::Pi) / 2u32;
        let v = unit_circle_phi(ModelId::A, 2, &half_pi).unwrap().to_f64();
        assert!((v + 2.0).abs() < 1e-30);
    }

    #[test]
    fn phi_matches_palindromic_restriction() {
        for n in 1..8 {
            for &t in &[0.1, 0.7, 1.3, 2.2, 3.0] {
                let th = f(t);
                for (m, scale) in [(ModelId::A, 2.0), (ModelId::B, 4.0), (ModelId::C, 2.0)] {
                    let k = konvalina_phi(&sigma_poly(m, n).unwrap(), &th).unwrap().to_f64();
                    let phi = unit_circle_phi(m, n, &th).unwrap().to_f64();
                    assert!(
                        (k - scale * phi).abs() < 1e-9 * k.abs().max(1.0),
                        "{m} n={n} θ={t}: {k} vs {phi}"
                    );
                }
            }
        }
    }

    #[test]
    fn band_edge_value() {
        let e = b_band_lower_edge(64).to_f64();
        let want = std::f64::consts::PI - (2f64.sqrt() - 0.5).acos();
        assert!((e - want).abs() < 1e-15);
    }
}
