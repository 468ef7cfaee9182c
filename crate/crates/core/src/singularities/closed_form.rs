//! Reciprocal iterates in the `q` plane.
//!
//! With `t = q/(1+q²)` the iterates evaluated at `x = 1` become rational
//! functions of `q` and of one square root, `1/Y_±(1; q)` (or `1/X_±`).
//! Their zeros are the poles of the iterates. The closed forms here are
//! cross-checked against the three-term recurrences they satisfy.

use crate::error::{Error, Result};
use crate::models::{Branch, ModelId, ReducedKernel, Side};
use crate::numeric::BigComplex;
use crate::ring::Ring;

/// The four iterate families of an asymmetric model, in `ω` index order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AsymFamily {
    /// `χ_n`.
    Chi,
    /// `Y_+(χ_n)`.
    YChi,
    /// `Υ_n`.
    Upsilon,
    /// `X_+(Υ_n)`.
    XUpsilon,
}

impl AsymFamily {
    pub const ALL: [AsymFamily; 4] = [
        AsymFamily::Chi,
        AsymFamily::YChi,
        AsymFamily::Upsilon,
        AsymFamily::XUpsilon,
    ];

    /// Matching `ω` index.
    pub fn omega_index(self) -> u8 {
        match self {
            AsymFamily::Chi => 1,
            AsymFamily::YChi => 2,
            AsymFamily::Upsilon => 3,
            AsymFamily::XUpsilon => 4,
        }
    }

    pub fn from_omega_index(k: u8) -> Result<Self> {
        match k {
            1 => Ok(AsymFamily::Chi),
            2 => Ok(AsymFamily::YChi),
            3 => Ok(AsymFamily::Upsilon),
            4 => Ok(AsymFamily::XUpsilon),
            _ => Err(Error::InvalidArgument(format!("omega index {k} not in 1..=4"))),
        }
    }

    fn side(self) -> Side {
        match self {
            AsymFamily::Chi | AsymFamily::YChi => Side::Y,
            AsymFamily::Upsilon | AsymFamily::XUpsilon => Side::X,
        }
    }
}

fn require(model: ModelId, symmetric: bool, op: &'static str) -> Result<()> {
    if model.is_symmetric() == symmetric {
        Ok(())
    } else {
        Err(Error::UnsupportedModel { model, operation: op })
    }
}

/// `1/Y_b(1; q)` or `1/X_b(1; q)`.
pub fn base_reciprocal(model: ModelId, side: Side, q: &BigComplex, branch: Branch) -> Result<BigComplex> {
    let one = q.lift(1);
    let y = ReducedKernel::new(model, side).root_q(&one, q, branch)?;
    if y.is_zero() {
        return Err(Error::SingularParameter("Y(1; q) = 0"));
    }
    Ok(y.recip())
}

fn check_generic(q: &BigComplex) -> Result<()> {
    let q2m1 = q.mul(q).sub(&q.lift(1));
    if q2m1.is_zero() {
        return Err(Error::SingularParameter("q = ±1"));
    }
    Ok(())
}

/// `q + 1/q`.
fn q_plus_inv(q: &BigComplex) -> BigComplex {
    q.add(&q.recip())
}

/// Closed form of `1/Y_n(1; q)` for a symmetric model. Negative `n` uses
/// the other branch.
pub fn closed_form_ybar(model: ModelId, n: i64, q: &BigComplex, branch: Branch) -> Result<BigComplex> {
    require(model, true, "closed_form_ybar")?;
    check_generic(q)?;
    let (m, branch) = if n < 0 { (-n, branch.flip()) } else { (n, branch) };
    let yb = base_reciprocal(model, Side::Y, q, branch)?;
    let one = q.lift(1);
    let qn = q.powi(m);
    let q2n = qn.mul(&qn);
    let q2 = q.mul(q);
    Ok(match model {
        ModelId::A => {
            // ((q² - q^{2n}) + q(q^{2n} - 1)Ȳ) / (q^n(q² - 1))
            let num = q2.sub(&q2n).add(&q.mul(&q2n.sub(&one)).mul(&yb));
            num.div(&qn.mul(&q2.sub(&one)))
        }
        _ => {
            // (q(q-1)(q^{2n}-1)Ȳ + (q - q^n)(2q^{n+1} - q^n + q² - 2q)) / (q^n(q+1)(q-1)²)
            let qm1 = q.sub(&one);
            let a = q.mul(&qm1).mul(&q2n.sub(&one)).mul(&yb);
            let b = q.sub(&qn).mul(&q.mul(&qn).scale(2).sub(&qn).add(&q2).sub(&q.scale(2)));
            a.add(&b).div(&qn.mul(&q.add(&one)).mul(&qm1).mul(&qm1))
        }
    })
}

/// The same quantity from `ȳ_n = (q + 1/q)ȳ_{n-1} - ȳ_{n-2} - e`,
/// `ȳ_0 = 1`, `ȳ_1 = 1/Y_b(1; q)`.
pub fn ybar_recurrence(model: ModelId, n: i64, q: &BigComplex, branch: Branch) -> Result<BigComplex> {
    require(model, true, "ybar_recurrence")?;
    let (m, branch) = if n < 0 { (-n, branch.flip()) } else { (n, branch) };
    let e = ReducedKernel::new(model, Side::Y).e;
    let s = q_plus_inv(q);
    let mut prev = q.lift(1);
    if m == 0 {
        return Ok(prev);
    }
    let mut cur = base_reciprocal(model, Side::Y, q, branch)?;
    for _ in 1..m {
        let next = s.mul(&cur).sub(&prev).sub(&q.lift(e));
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Closed form of the reciprocal of an asymmetric iterate family at index
/// `n ≥ 0`, evaluated at `x = 1` (or `y = 1`).
pub fn closed_form_asymmetric(
    model: ModelId,
    family: AsymFamily,
    n: usize,
    q: &BigComplex,
    branch: Branch,
) -> Result<BigComplex> {
    require(model, false, "closed_form_asymmetric")?;
    check_generic(q)?;
    let base = base_reciprocal(model, family.side(), q, branch)?;
    let one = q.lift(1);
    let p = |k: usize| q.powi(k as i64);
    let n2 = 2 * n;
    let n4 = 4 * n;
    let poly = |terms: &[(i64, usize)]| terms.iter().fold(q.lift(0), |acc, &(c, e)| acc.add(&p(e).scale(c)));
    let lin = match family {
        AsymFamily::Chi | AsymFamily::Upsilon => poly(&[(1, n4 + 3), (-1, n4 + 1), (-1, 3), (1, 1)]),
        AsymFamily::YChi | AsymFamily::XUpsilon => poly(&[(1, n4 + 4), (-1, n4 + 2), (-1, 2), (1, 0)]),
    };
    let constant = match family {
        AsymFamily::Chi => poly(&[(-2, n4 + 2), (1, n4), (2, n2 + 2), (1, 4), (-2, 2)]),
        AsymFamily::YChi => poly(&[(-2, n4 + 3), (1, n4 + 1), (1, n2 + 3), (1, n2 + 1), (1, 3), (-2, 1)]),
        AsymFamily::Upsilon => poly(&[
            (-1, n4 + 2),
            (-1, n4 + 1),
            (1, n4),
            (1, n2 + 3),
            (1, n2 + 1),
            (1, 4),
            (-1, 3),
            (-1, 2),
        ]),
        AsymFamily::XUpsilon => poly(&[
            (-1, n4 + 3),
            (-1, n4 + 2),
            (1, n4 + 1),
            (2, n2 + 2),
            (1, 3),
            (-1, 2),
            (-1, 1),
        ]),
    };
    let q2m1 = q.mul(q).sub(&one);
    let d = p(n2).mul(&q2m1).mul(&q2m1);
    Ok(lin.mul(&base).add(&constant).div(&d))
}

/// All four asymmetric families at index `n` from the coupled recurrences
/// `χ̄_n = (q+1/q)·Yχ̄_{n-1} - χ̄_{n-1} - ν`, `Yχ̄_n = (q+1/q)·χ̄_n - Yχ̄_{n-1} - e`,
/// `Ῡ_n = (q+1/q)·XῩ_{n-1} - Ῡ_{n-1} - e`, `XῩ_n = (q+1/q)·Ῡ_n - XῩ_{n-1} - ν`,
/// where `ν = [N ∈ S]` and `e = [E ∈ S]`.
pub fn asymmetric_recurrence(model: ModelId, n: usize, q: &BigComplex, branch: Branch) -> Result<[BigComplex; 4]> {
    require(model, false, "asymmetric_recurrence")?;
    let e = ReducedKernel::new(model, Side::Y).e;
    let nu = ReducedKernel::new(model, Side::X).e;
    let s = q_plus_inv(q);
    let mut chi = q.lift(1);
    let mut ychi = base_reciprocal(model, Side::Y, q, branch)?;
    let mut ups = q.lift(1);
    let mut xups = base_reciprocal(model, Side::X, q, branch)?;
    for _ in 0..n {
        chi = s.mul(&ychi).sub(&chi).sub(&q.lift(nu));
        ychi = s.mul(&chi).sub(&ychi).sub(&q.lift(e));
        ups = s.mul(&xups).sub(&ups).sub(&q.lift(e));
        xups = s.mul(&ups).sub(&xups).sub(&q.lift(nu));
    }
    Ok([chi, ychi, ups, xups])
}
