//! The polynomial families whose roots contain the poles of the iterates.

use crate::error::{Error, Result};
use crate::models::ModelId;

use super::poly::IntPolynomial;

fn p(c: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64s(c)
}

fn q(k: usize) -> IntPolynomial {
    IntPolynomial::monomial(1, k)
}

/// `Σ c·q^e` with exponents possibly below zero, cleared by a power of `q`.
fn laurent(terms: &[(i64, i64)]) -> IntPolynomial {
    IntPolynomial::from_laurent(terms)
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidArgument("n must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// `q^a + q^b`.
fn pair(a: usize, b: usize) -> IntPolynomial {
    q(a).add(&q(b))
}

/// `σ_n(q)` for the symmetric models (`α_n`, `β_n`, `γ_n`).
pub fn sigma_poly(model: ModelId, n: usize) -> Result<IntPolynomial> {
    check_n(n)?;
    let ni = n as i64;
    Ok(match model {
        ModelId::A => laurent(&[(1, 4 * ni), (1, 2 * ni + 2), (-4, 2 * ni), (1, 2 * ni - 2), (1, 0)]),
        ModelId::B => {
            // (q^{2n-1} + (q³-2q²-2q+1)q^{n-2} + 1)(q^{2n+1} + (q³-2q²-2q+1)q^{n-1} + 1)
            let factor = |top: i64, shift: i64| {
                laurent(&[
                    (1, top),
                    (1, shift + 3),
                    (-2, shift + 2),
                    (-2, shift + 1),
                    (1, shift),
                    (1, 0),
                ])
            };
            factor(2 * ni - 1, ni - 2).mul(&factor(2 * ni + 1, ni - 1))
        }
        ModelId::C => {
            let a = q(2).mul(&p(&[1, -1, 1])).mul(&pair(0, 4 * n));
            let b = q(1).mul(&p(&[1, -3, 1])).mul(&p(&[1, 2, 1])).mul(&pair(n, 3 * n));
            let c = q(2 * n).mul(&p(&[1, -4, -1, 14, -1, -4, 1]));
            a.add(&b).add(&c)
        }
        _ => {
            return Err(Error::UnsupportedModel {
                model,
                operation: "sigma_poly",
            })
        }
    })
}

/// `ω^index_n(q)` for the asymmetric models. Index 1..4 matches the
/// families `χ_n`, `Y_+∘χ_n`, `Υ_n`, `X_+∘Υ_n`.
pub fn omega_poly(model: ModelId, index: u8, n: usize) -> Result<IntPolynomial> {
    check_n(n)?;
    if !(1..=4).contains(&index) {
        return Err(Error::InvalidArgument(format!("omega index {index} not in 1..=4")));
    }
    match model {
        ModelId::D => Ok(omega_d(index, n)),
        ModelId::E => Ok(omega_e(index, n)),
        _ => Err(Error::UnsupportedModel {
            model,
            operation: "omega_poly",
        }),
    }
}

fn omega_d(index: u8, n: usize) -> IntPolynomial {
    let sum = |terms: &[(i64, usize)]| {
        terms.iter().fold(IntPolynomial::zero(), |acc, &(c, e)| {
            acc.add(&IntPolynomial::monomial(c, e))
        })
    };
    let f1 = sum(&[(1, 4 * n + 2), (1, 2 * n + 4), (-4, 2 * n + 2), (1, 2 * n), (1, 2)]);
    let f2 = sum(&[(1, 4 * n + 4), (1, 2 * n + 4), (-4, 2 * n + 2), (1, 2 * n), (1, 0)]);
    let tail = [
        (1, 2 * n + 4),
        (-1, 2 * n + 3),
        (-2, 2 * n + 2),
        (-1, 2 * n + 1),
        (1, 2 * n),
    ];
    let g1 = sum(&tail).add(&sum(&[(1, 4 * n + 3), (1, 1)]));
    let g2 = sum(&tail).add(&sum(&[(1, 4 * n + 1), (1, 3)]));
    match index {
        1 => f1.pow(2),
        2 => f1.mul(&f2),
        3 => g1.mul(&g2),
        _ => g1.pow(2),
    }
}

fn omega_e(index: u8, n: usize) -> IntPolynomial {
    let quartic = p(&[1, 0, -1, 0, 1]);
    match index {
        1 => q(2)
            .mul(&quartic)
            .mul(&pair(8 * n, 0))
            .add(&q(2).mul(&p(&[1, 0, -4, 0, 1])).scale(2).mul(&pair(6 * n, 2 * n)))
            .add(&q(4 * n).mul(&p(&[1, 0, -10, 0, 24, 0, -10, 0, 1]))),
        2 => quartic
            .mul(&pair(8 * n + 4, 0))
            .add(&p(&[1, 0, -3, 0, -3, 0, 1]).mul(&pair(6 * n + 2, 2 * n)))
            .add(&q(4 * n).mul(&p(&[1, 0, -9, 0, 22, 0, -9, 0, 1]))),
        3 => q(2)
            .mul(&quartic)
            .mul(&pair(8 * n, 0))
            .add(&q(1).mul(&p(&[1, -1, -1, -2, -1, -1, 1])).mul(&pair(6 * n, 2 * n)))
            .add(&q(4 * n).mul(&p(&[1, -2, -4, 2, 12, 2, -4, -2, 1]))),
        _ => quartic
            .mul(&pair(8 * n + 4, 0))
            .add(&q(1).mul(&p(&[1, -1, -2, -1, 1])).scale(2).mul(&pair(6 * n + 2, 2 * n)))
            .add(&q(4 * n).mul(&p(&[1, -2, -5, 2, 14, 2, -5, -2, 1]))),
    }
}
