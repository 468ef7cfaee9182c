//! Deciding which roots of the singularity polynomials are poles.
//!
//! A root `q_0` of `σ_n` (or `ω^k_n`) annihilates the reciprocal iterate on
//! one of the two branches of `1/Y_±(1; q)`. Only zeros on the `+` branch
//! (the analytic continuation of the power series) are poles of the
//! iterate. The decision compares both branch values against thresholds
//! tied to the working precision of `q_0`.

use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::models::{Branch, ModelId, ReducedKernel, Side};
use crate::numeric::{BigComplex, BigFloat};
use crate::ring::Ring;

use super::closed_form::{closed_form_asymmetric, closed_form_ybar, AsymFamily};
use super::families::sigma_poly;
use super::imaginary::{descartes_sign_changes, imaginary_axis_root};
use super::roots::{find_roots, Family};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The `+` branch vanishes: `q_0` is a pole of the iterate.
    Plus,
    /// Only the `-` branch vanishes: `q_0` is not a pole.
    Minus,
    /// Both branches coincide and vanish: a branch point of `Y_±(1; q)`.
    BranchPoint,
    /// No clear decision at this precision.
    Unresolved,
}

#[derive(Clone, Debug)]
pub struct PoleClassification {
    pub verdict: Verdict,
    /// `|value|` on the `+` and `-` branches.
    pub plus: BigFloat,
    pub minus: BigFloat,
}

impl PoleClassification {
    pub fn is_pole(&self) -> bool {
        self.verdict == Verdict::Plus
    }
}

fn reciprocal_iterate(model: ModelId, family: Family, n: i64, q: &BigComplex, branch: Branch) -> Result<BigComplex> {
    match family {
        Family::Sigma => closed_form_ybar(model, n, q, branch),
        Family::Omega(k) => {
            let f = AsymFamily::from_omega_index(k)?;
            let n = usize::try_from(n).map_err(|_| Error::InvalidArgument("negative index".into()))?;
            closed_form_asymmetric(model, f, n, q, branch)
        }
        Family::Poly => Err(Error::InvalidArgument(
            "classification needs a sigma or omega family".into(),
        )),
    }
}

/// Classify a root `q` of `σ_n` (symmetric models) or `ω^k_n`
/// (asymmetric models).
pub fn classify_pole(model: ModelId, family: Family, n: usize, q: &BigComplex) -> Result<PoleClassification> {
    let prec = q.prec();
    let p = reciprocal_iterate(model, family, n as i64, q, Branch::Plus)?;
    let m = reciprocal_iterate(model, family, n as i64, q, Branch::Minus)?;
    let gap = p.dist(&m);
    let (plus, minus) = (p.abs(), m.abs());
    let zero = BigFloat::with_val(prec, 1) >> (prec / 3);
    let nonzero = BigFloat::with_val(prec, 1) >> (prec / 8);
    let verdict = if plus < zero && minus > nonzero {
        Verdict::Plus
    } else if minus < zero && plus > nonzero {
        Verdict::Minus
    } else if plus < zero && minus < zero && gap < zero {
        Verdict::BranchPoint
    } else {
        Verdict::Unresolved
    };
    Ok(PoleClassification { verdict, plus, minus })
}

fn require_symmetric(model: ModelId, op: &'static str) -> Result<()> {
    if model.is_symmetric() {
        Ok(())
    } else {
        Err(Error::UnsupportedModel { model, operation: op })
    }
}

/// Off-circle poles of `Y_n` (`+` branch zeros of `σ_n` with
/// `||q| - 1| > 1e-6`).
pub fn off_circle_poles(model: ModelId, n: usize, prec: u32) -> Result<Vec<BigComplex>> {
    require_symmetric(model, "off_circle_poles")?;
    let rs = find_roots(&sigma_poly(model, n)?, prec)?;
    let mut out = Vec::new();
    for r in rs.nontrivial() {
        let off = (r.value.abs().to_f64() - 1.0).abs() > 1e-6;
        if off && classify_pole(model, Family::Sigma, n, &r.value)?.is_pole() {
            out.push(r.value.clone());
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct DistinctnessReport {
    pub model: ModelId,
    /// Smallest distance between pole sets of indices that must not share
    /// poles (or between imaginary-axis roots for D and E).
    pub min_distance: f64,
    pub pairs_checked: usize,
    /// `(n, k, distance)` for every pair closer than the tolerance.
    pub violations: Vec<(usize, usize, f64)>,
}

impl DistinctnessReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Pole sets of different indices are disjoint. Model B may share poles
/// between adjacent indices. For D and E the check is on the
/// imaginary-axis root of each even index: it exists, Descartes' rule
/// leaves room for only one root with `r > 1`, and the roots differ.
pub fn distinctness_check(
    model: ModelId,
    ns: RangeInclusive<usize>,
    tol: f64,
    prec: u32,
) -> Result<DistinctnessReport> {
    let mut points: Vec<(usize, Vec<BigComplex>)> = Vec::new();
    if model.is_symmetric() {
        for n in ns {
            points.push((n, off_circle_poles(model, n, prec)?));
        }
    } else {
        for n in ns.filter(|n| *n >= 2 && n % 2 == 0) {
            let r = imaginary_axis_root(model, n, prec)?;
            if descartes_sign_changes(model, r.to_f64())? > 2 {
                return Err(Error::InvalidArgument(format!("Descartes bound exceeded at n = {n}")));
            }
            points.push((n, vec![BigComplex::new(BigFloat::new(prec), r)]));
        }
    }
    let mut report = DistinctnessReport {
        model,
        min_distance: f64::INFINITY,
        pairs_checked: 0,
        violations: Vec::new(),
    };
    for (i, (n, pn)) in points.iter().enumerate() {
        for (k, pk) in &points[i + 1..] {
            if model == ModelId::B && k - n == 1 {
                continue;
            }
            for a in pn {
                for b in pk {
                    let d = a.dist(b).to_f64();
                    report.pairs_checked += 1;
                    report.min_distance = report.min_distance.min(d);
                    if d <= tol {
                        report.violations.push((*n, *k, d));
                    }
                }
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct NoncancellationReport {
    /// `1/Y_{n-1}(q) + 1/Y_{n+1}(q)` on the `+` branch.
    pub sum: BigComplex,
    /// `-[E ∈ S]`, the value the three-term recurrence forces at a pole.
    pub recurrence_constant: i64,
    /// `|1/Y_n(q)|`, small when `q` is a pole.
    pub pole_residual: BigFloat,
    /// `|1/Y_{n-1}(q) - 1/Y_{n+1}(q)|`; nonzero means `Y_{n-1}(q) ≠ Y_{n+1}(q)`.
    pub neighbour_gap: BigFloat,
}

impl NoncancellationReport {
    /// `|sum - epsilon| < tol` and the neighbours differ.
    pub fn matches(&self, epsilon: i64, tol: f64) -> bool {
        self.sum.dist(&self.sum.lift(epsilon)).to_f64() < tol && self.neighbour_gap.to_f64() > tol
    }
}

/// Evaluate the neighbour sum at a pole `q` of `Y_n`.
pub fn noncancellation_check(model: ModelId, n: usize, q: &BigComplex) -> Result<NoncancellationReport> {
    require_symmetric(model, "noncancellation_check")?;
    let m = n as i64;
    let a = closed_form_ybar(model, m - 1, q, Branch::Plus)?;
    let b = closed_form_ybar(model, m + 1, q, Branch::Plus)?;
    let pole_residual = closed_form_ybar(model, m, q, Branch::Plus)?.abs();
    Ok(NoncancellationReport {
        neighbour_gap: a.dist(&b),
        sum: a.add(&b),
        recurrence_constant: -ReducedKernel::new(model, Side::Y).e,
        pole_residual,
    })
}
