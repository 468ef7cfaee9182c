//! A minimal commutative-ring interface shared by every coefficient domain
//! the kernel formulas are evaluated in: exact integers and rationals,
//! truncated series in `t`, and multiprecision complex numbers in `q`.

use rug::{Integer, Rational};

pub trait Ring: Clone {
    /// The integer `value` embedded in the same context as `self`
    /// (same series order, same floating precision).
    fn lift(&self, value: i64) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;

    fn neg(&self) -> Self {
        self.lift(0).sub(self)
    }

    fn scale(&self, k: i64) -> Self {
        self.mul(&self.lift(k))
    }
}

/// Horner evaluation of an integer polynomial (`coeffs[i]` multiplies `x^i`).
pub fn eval_int_poly<R: Ring>(coeffs: &[i64], x: &R) -> R {
    let mut acc = x.lift(0);
    for &c in coeffs.iter().rev() {
        acc = acc.mul(x).add(&x.lift(c));
    }
    acc
}

impl Ring for Integer {
    fn lift(&self, value: i64) -> Self {
        Integer::from(value)
    }
    fn add(&self, rhs: &Self) -> Self {
        Integer::from(self + rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Integer::from(self - rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Integer::from(self * rhs)
    }
}

impl Ring for Rational {
    fn lift(&self, value: i64) -> Self {
        Rational::from(value)
    }
    fn add(&self, rhs: &Self) -> Self {
        Rational::from(self + rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Rational::from(self - rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Rational::from(self * rhs)
    }
}
