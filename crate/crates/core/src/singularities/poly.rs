//! Exact univariate polynomials over the integers.

use std::fmt;

use rug::{Integer, Rational};

use crate::numeric::{BigComplex, BigFloat};
use crate::ring::Ring;

/// `Σ coeffs[k]·q^k`, with no trailing (high-order) zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<Integer>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<Integer>) -> Self {
        while coeffs.last().is_some_and(|c| c.cmp0().is_eq()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| Integer::from(v)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c·q^k`.
    pub fn monomial(c: i64, k: usize) -> Self {
        let mut coeffs = vec![Integer::new(); k + 1];
        coeffs[k] = Integer::from(c);
        Self::new(coeffs)
    }

    /// Laurent polynomial `Σ c·q^e` multiplied by the smallest power of `q`
    /// that clears negative exponents. Nonnegative input is left alone.
    pub fn from_laurent(terms: &[(i64, i64)]) -> Self {
        let low = terms.iter().map(|t| t.1).min().unwrap_or(0).min(0);
        let mut p = Self::zero();
        for &(c, e) in terms {
            p = p.add(&Self::monomial(c, (e - low) as usize));
        }
        p
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: usize) -> Integer {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Number of zero coefficients below the first nonzero one.
    pub fn low_zeros(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.cmp0().is_eq()).count()
    }

    /// Divide out the largest power of `q`.
    pub fn strip_low_zeros(&self) -> Self {
        IntPolynomial {
            coeffs: self.coeffs[self.low_zeros()..].to_vec(),
        }
    }

    /// The coefficient vector reads the same both ways once the power of
    /// `q` dividing the polynomial is removed.
    pub fn is_palindromic(&self) -> bool {
        let c = &self.strip_low_zeros().coeffs;
        c.iter().eq(c.iter().rev())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Integer::new(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.cmp0().is_eq() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::new(self.coeffs.iter().map(|x| Integer::from(x * c)).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| Integer::from(c * k as u64))
                .collect(),
        )
    }

    pub fn eval<R: Ring>(&self, x: &R) -> R {
        let mut acc = x.lift(0);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&lift_integer(x, c));
        }
        acc
    }

    pub fn eval_complex(&self, z: &BigComplex) -> BigComplex {
        let p = z.prec();
        let mut acc = BigComplex::zero(p);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z);
            acc.re += c;
        }
        acc
    }

    pub fn eval_real(&self, x: &BigFloat) -> BigFloat {
        let mut acc = BigFloat::new(x.prec());
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    pub fn to_f64s(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64()).collect()
    }

    /// Content-free version with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = Integer::new();
        for c in &self.coeffs {
            g.gcd_mut(c);
        }
        if self.coeffs.last().is_some_and(|c| c.cmp0().is_lt()) {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| Integer::from(c.div_exact_ref(&g))).collect())
    }

    /// Squarefree factorization `p = c·Π f_i^i` (Yun); returns the
    /// nonconstant `(f_i, i)` with primitive `f_i`.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPolynomial, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = RatPoly::from_int(self);
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0);
        let mut c = df.div_exact(&a0);
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree() > 0 {
            let a = b.gcd(&d);
            if a.degree() > 0 {
                out.push((a.to_int_primitive(), i));
            }
            b = b.div_exact(&a);
            c = d.div_exact(&a);
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }
}

fn lift_integer<R: Ring>(x: &R, c: &Integer) -> R {
    match c.to_i64() {
        Some(v) => x.lift(v),
        None => {
            // Horner in base 2^62 keeps the lift inside the ring interface.
            let base = x.lift(1 << 62);
            let mut digits = Vec::new();
            let mut m = c.clone().abs();
            while m.cmp0().is_gt() {
                let d: Integer = &m & ((Integer::from(1) << 62u32) - 1u32);
                digits.push(d.to_i64().unwrap());
                m >>= 62;
            }
            let mut acc = x.lift(0);
            for d in digits.iter().rev() {
                acc = acc.mul(&base).add(&x.lift(*d));
            }
            if c.cmp0().is_lt() {
                acc.neg()
            } else {
                acc
            }
        }
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.cmp0().is_eq() {
                continue;
            }
            let neg = c.cmp0().is_lt();
            let mag = Integer::from(c.abs_ref());
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show = k == 0 || mag != 1;
            if show {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("q")?,
                _ => write!(f, "q^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Monic-normalized rational polynomial used internally for gcds.
#[derive(Clone, Debug, PartialEq)]
struct RatPoly(Vec<Rational>);

impl RatPoly {
    fn trim(mut v: Vec<Rational>) -> Self {
        while v.last().is_some_and(|c| c.cmp0().is_eq()) {
            v.pop();
        }
        RatPoly(v)
    }

    fn from_int(p: &IntPolynomial) -> Self {
        RatPoly(p.coeffs.iter().map(|c| Rational::from(c.clone())).collect())
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn monic(&self) -> Self {
        match self.0.last() {
            None => self.clone(),
            Some(lead) => {
                let lead = lead.clone();
                RatPoly(self.0.iter().map(|c| Rational::from(c / &lead)).collect())
            }
        }
    }

    fn derivative(&self) -> Self {
        Self::trim(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| Rational::from(c * k as u64))
                .collect(),
        )
    }

    fn sub(&self, rhs: &Self) -> Self {
        let n = self.0.len().max(rhs.0.len());
        let get = |v: &Vec<Rational>, k: usize| v.get(k).cloned().unwrap_or_default();
        Self::trim((0..n).map(|k| get(&self.0, k) - get(&rhs.0, k)).collect())
    }

    fn divrem(&self, d: &Self) -> (Self, Self) {
        let mut r = self.0.clone();
        let dd = d.degree();
        let lead = d.0.last().unwrap().clone();
        if r.len() < d.0.len() {
            return (RatPoly(Vec::new()), Self::trim(r));
        }
        let mut q = vec![Rational::new(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = Rational::from(&r[k + dd] / &lead);
            if c.cmp0().is_ne() {
                for (j, dc) in d.0.iter().enumerate() {
                    r[k + j] -= Rational::from(&c * dc);
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::trim(q), Self::trim(r))
    }

    fn div_exact(&self, d: &Self) -> Self {
        self.divrem(d).0
    }

    fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.monic(), other.monic());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    fn to_int_primitive(&self) -> IntPolynomial {
        let mut l = Integer::from(1);
        for c in &self.0 {
            l.lcm_mut(c.denom());
        }
        let coeffs = self
            .0
            .iter()
            .map(|c| c.numer() * Integer::from(&l / c.denom()))
            .collect();
        IntPolynomial::new(coeffs).primitive()
    }
}
