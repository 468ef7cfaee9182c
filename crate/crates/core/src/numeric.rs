//! Multiprecision real and complex scalars.
//!
//! `BigFloat` is MPFR's `Float` (round-to-nearest on every operation).
//! `BigComplex` is a pair of `BigFloat`s; binary operations run at the larger
//! of the two operand precisions.

use std::fmt;

use num_complex::Complex64;
use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use crate::ring::Ring;

pub type BigFloat = Float;

pub fn float(prec: u32, value: f64) -> BigFloat {
    Float::with_val(prec, value)
}

pub fn pi(prec: u32) -> BigFloat {
    Float::with_val(prec, Constant::Pi)
}

#[derive(Clone, PartialEq)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl fmt::Debug for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64();
        write!(f, "({re:e} {im:+e}i)@{}", self.prec())
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64();
        write!(f, "{re} {im:+}i")
    }
}

impl BigComplex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        let prec = re.prec().max(im.prec());
        let mut c = BigComplex { re, im };
        c.set_prec(prec);
        c
    }

    pub fn zero(prec: u32) -> Self {
        BigComplex {
            re: Float::new(prec),
            im: Float::new(prec),
        }
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        BigComplex {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    pub fn from_real(re: &BigFloat) -> Self {
        BigComplex {
            re: re.clone(),
            im: Float::new(re.prec()),
        }
    }

    pub fn from_int(value: i64, prec: u32) -> Self {
        BigComplex {
            re: Float::with_val(prec, value),
            im: Float::new(prec),
        }
    }

    pub fn i(prec: u32) -> Self {
        BigComplex::from_f64(0.0, 1.0, prec)
    }

    /// `r · e^{iθ}`.
    pub fn from_polar(r: &BigFloat, theta: &BigFloat) -> Self {
        let prec = r.prec().max(theta.prec());
        let (s, c) = Float::with_val(prec, theta).sin_cos(Float::new(prec));
        BigComplex {
            re: Float::with_val(prec, r * &c),
            im: Float::with_val(prec, r * &s),
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn set_prec(&mut self, prec: u32) {
        self.re.set_prec(prec);
        self.im.set_prec(prec);
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        let mut c = self.clone();
        c.set_prec(prec);
        c
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn to_c64(&self) -> Complex64 {
        let (re, im) = self.to_f64();
        Complex64::new(re, im)
    }

    pub fn from_c64(z: Complex64, prec: u32) -> Self {
        BigComplex::from_f64(z.re, z.im, prec)
    }

    pub fn conj(&self) -> Self {
        BigComplex {
            re: self.re.clone(),
            im: Float::with_val(self.im.prec(), -&self.im),
        }
    }

    pub fn norm_sqr(&self) -> BigFloat {
        let p = self.prec();
        Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref())
    }

    pub fn abs(&self) -> BigFloat {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    /// Principal argument in `(-π, π]`.
    pub fn arg(&self) -> BigFloat {
        Float::with_val(self.prec(), self.im.atan2_ref(&self.re))
    }

    pub fn scale_real(&self, k: &BigFloat) -> Self {
        let p = self.prec();
        BigComplex {
            re: Float::with_val(p, &self.re * k),
            im: Float::with_val(p, &self.im * k),
        }
    }

    pub fn recip(&self) -> Self {
        let p = self.prec();
        let n = self.norm_sqr();
        BigComplex {
            re: Float::with_val(p, &self.re / &n),
            im: Float::with_val(p, -(Float::with_val(p, &self.im / &n))),
        }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.recip())
    }

    /// Principal square root (branch cut along the negative real axis,
    /// `sqrt(-x) = +i·sqrt(x)` on the cut).
    pub fn sqrt(&self) -> Self {
        let p = self.prec();
        if self.is_zero() {
            return BigComplex::zero(p);
        }
        let r = self.abs();
        if self.re >= 0 {
            let s = Float::with_val(p, Float::with_val(p, &r + &self.re) / 2u32).sqrt();
            let im = Float::with_val(p, &self.im / Float::with_val(p, &s * 2u32));
            BigComplex { re: s, im }
        } else {
            let s = Float::with_val(p, Float::with_val(p, &r - &self.re) / 2u32).sqrt();
            let re = Float::with_val(p, self.im.abs_ref()) / Float::with_val(p, &s * 2u32);
            let im = if self.im.is_sign_negative() && !self.im.is_zero() {
                -s
            } else {
                s
            };
            BigComplex { re, im }
        }
    }

    /// Integer power by repeated squaring; negative exponents go through
    /// the reciprocal.
    pub fn powi(&self, n: i64) -> Self {
        let p = self.prec();
        let mut base = if n < 0 { self.recip() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = BigComplex::from_int(1, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn dist(&self, other: &Self) -> BigFloat {
        self.sub(other).abs()
    }

    pub fn real_pow(x: &BigFloat, n: i32) -> BigFloat {
        Float::with_val(x.prec(), x.pow(n))
    }
}

impl Ring for BigComplex {
    fn lift(&self, value: i64) -> Self {
        BigComplex::from_int(value, self.prec())
    }

    fn add(&self, rhs: &Self) -> Self {
        let p = self.prec().max(rhs.prec());
        BigComplex {
            re: Float::with_val(p, &self.re + &rhs.re),
            im: Float::with_val(p, &self.im + &rhs.im),
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        let p = self.prec().max(rhs.prec());
        BigComplex {
            re: Float::with_val(p, &self.re - &rhs.re),
            im: Float::with_val(p, &self.im - &rhs.im),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        let p = self.prec().max(rhs.prec());
        let ac = Float::with_val(p, &self.re * &rhs.re);
        let bd = Float::with_val(p, &self.im * &rhs.im);
        let ad = Float::with_val(p, &self.re * &rhs.im);
        let bc = Float::with_val(p, &self.im * &rhs.re);
        BigComplex {
            re: ac - bd,
            im: ad + bc,
        }
    }

    fn neg(&self) -> Self {
        BigComplex {
            re: Float::with_val(self.re.prec(), -&self.re),
            im: Float::with_val(self.im.prec(), -&self.im),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 128;

    fn close(a: &BigComplex, re: f64, im: f64) -> bool {
        let (x, y) = a.to_f64();
        (x - re).abs() < 1e-14 && (y - im).abs() < 1e-14
    }

    #[test]
    fn sqrt_is_principal() {
        assert!(close(&BigComplex::from_f64(-4.0, 0.0, P).sqrt(), 0.0, 2.0));
        assert!(close(&BigComplex::from_f64(0.0, 2.0, P).sqrt(), 1.0, 1.0));
        assert!(close(&BigComplex::from_f64(0.0, -2.0, P).sqrt(), 1.0, -1.0));
        assert!(close(&BigComplex::from_f64(-3.0, -4.0, P).sqrt(), 1.0, -2.0));
        let z = BigComplex::from_f64(-0.3, 0.7, P);
        let s = z.sqrt();
        assert!(s.re >= 0);
        let back = s.mul(&s).sub(&z).abs();
        assert!(back < 1e-35);
    }

    #[test]
    fn powers_and_reciprocals() {
        let z = BigComplex::from_f64(0.5, 1.25, P);
        let a = z.powi(5);
        let b = z.mul(&z).mul(&z).mul(&z).mul(&z);
        assert!(a.dist(&b) < 1e-30);
        let c = z.powi(-3).mul(&z.powi(3));
        assert!(close(&c, 1.0, 0.0));
        assert!(close(&z.powi(0), 1.0, 0.0));
    }

    #[test]
    fn polar_round_trip() {
        let r = float(P, 1.2);
        let th = float(P, 0.45) * pi(P);
        let z = BigComplex::from_polar(&r, &th);
        assert!((z.abs().to_f64() - 1.2).abs() < 1e-15);
        assert!((z.arg().to_f64() - 0.45 * std::f64::consts::PI).abs() < 1e-15);
    }
}
