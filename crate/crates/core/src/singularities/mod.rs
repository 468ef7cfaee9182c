//! Singularities of the iterates in the `q` plane, where `t = q/(1+q²)`.

pub mod classify;
pub mod closed_form;
pub mod export;
pub mod families;
pub mod imaginary;
pub mod poly;
pub mod roots;
pub mod unit_circle;

pub use classify::{
    classify_pole, distinctness_check, noncancellation_check, off_circle_poles, DistinctnessReport,
    NoncancellationReport, PoleClassification, Verdict,
};
pub use closed_form::{closed_form_asymmetric, closed_form_ybar, AsymFamily};
pub use export::{export_points, ExportFormat};
pub use families::{omega_poly, sigma_poly};
pub use poly::IntPolynomial;
pub use roots::{find_roots, Family, Plane, Root, RootSet};

use crate::error::{Error, Result};
use crate::models::ModelId;
use crate::numeric::BigComplex;
use crate::ring::Ring;

/// `t = q/(1+q²)`. Undefined at `q = ±i`.
pub fn t_plane_map(q: &BigComplex) -> Result<BigComplex> {
    let den = q.lift(1).add(&q.mul(q));
    if den.is_zero() {
        return Err(Error::SingularParameter("q = ±i"));
    }
    Ok(q.div(&den))
}

/// Roots of `σ_n` (symmetric models) or of `ω^1_n … ω^4_n` (asymmetric
/// models), labelled with their family.
pub fn singularity_roots(model: ModelId, n: usize, precision_bits: u32) -> Result<Vec<RootSet>> {
    let mut out = Vec::new();
    if model.is_symmetric() {
        let mut rs = find_roots(&sigma_poly(model, n)?, precision_bits)?;
        rs.family = Family::Sigma;
        rs.model = Some(model);
        rs.n = n;
        out.push(rs);
    } else {
        for k in 1..=4 {
            let mut rs = find_roots(&omega_poly(model, k, n)?, precision_bits)?;
            rs.family = Family::Omega(k);
            rs.model = Some(model);
            rs.n = n;
            out.push(rs);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_map_values() {
        let t = t_plane_map(&BigComplex::from_int(1, 64)).unwrap();
        assert_eq!(t.to_f64(), (0.5, 0.0));
        assert!(t_plane_map(&BigComplex::i(64)).is_err());
        assert!(t_plane_map(&BigComplex::i(64).neg()).is_err());
    }
}
