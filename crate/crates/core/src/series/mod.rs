//! Dense truncated power series in `t`.
//!
//! A [`TruncatedSeries`] stores the coefficients of `t^0 .. t^{order-1}`;
//! everything at or beyond `t^order` is unknown. Arithmetic tracks how many
//! coefficients of the result are determined: a product of `f` (known mod
//! `t^M`, valuation `u`) and `g` (known mod `t^N`, valuation `v`) is known
//! mod `t^{min(M+v, N+u)}`, so small-valuation factors do not throw away
//! precision.
//!
//! Coefficients are exact rationals or exact integers. Integer series take a
//! fast path (Kronecker multiplication, Newton inversion); rational series
//! use schoolbook arithmetic.

mod kronecker;

use std::cell::Cell;
use std::fmt;

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::ring::Ring;

/// Exact coefficient domain.
pub trait Coefficient: Ring + PartialEq + fmt::Debug + fmt::Display {
    /// Integer series get asymptotically fast multiplication and inversion.
    const FAST: bool = false;

    fn from_i64(value: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// `self += a·b`.
    fn add_mul(&mut self, a: &Self, b: &Self);
    /// Exact quotient; `Err(NonIntegral)` when it leaves the domain.
    fn div_exact(&self, d: &Self, index: usize) -> Result<Self>;

    fn mul_truncated(a: &[Self], b: &[Self], len: usize) -> Vec<Self> {
        schoolbook(a, b, len)
    }
}

fn schoolbook<C: Coefficient>(a: &[C], b: &[C], len: usize) -> Vec<C> {
    let mut out = vec![C::from_i64(0); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j].add_mul(x, y);
        }
    }
    out
}

impl Coefficient for Rational {
    fn from_i64(value: i64) -> Self {
        Rational::from(value)
    }
    fn is_zero(&self) -> bool {
        self.cmp0().is_eq()
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += Rational::from(a * b);
    }
    fn div_exact(&self, d: &Self, _index: usize) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::NonInvertible);
        }
        Ok(Rational::from(self / d))
    }
}

impl Coefficient for Integer {
    const FAST: bool = true;

    fn from_i64(value: i64) -> Self {
        Integer::from(value)
    }
    fn is_zero(&self) -> bool {
        self.cmp0().is_eq()
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
    fn div_exact(&self, d: &Self, index: usize) -> Result<Self> {
        if d.cmp0().is_eq() {
            return Err(Error::NonInvertible);
        }
        if !self.is_divisible(d) {
            return Err(Error::NonIntegral { index });
        }
        Ok(Integer::from(self.div_exact_ref(d)))
    }

    fn mul_truncated(a: &[Self], b: &[Self], len: usize) -> Vec<Self> {
        if a.len().min(b.len()).min(len) <= 24 {
            schoolbook(a, b, len)
        } else {
            kronecker::mul_truncated(a, b, len)
        }
    }
}

/// Calls to the non-linear series operations on this thread.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OpCounts {
    pub mul: u64,
    pub reciprocal: u64,
    pub sqrt: u64,
    pub divide: u64,
}

thread_local! {
    static COUNTS: Cell<OpCounts> = Cell::new(OpCounts::default());
}

fn bump(f: impl FnOnce(&mut OpCounts)) {
    COUNTS.with(|c| {
        let mut v = c.get();
        f(&mut v);
        c.set(v);
    });
}

pub fn op_counts() -> OpCounts {
    COUNTS.with(|c| c.get())
}

pub fn reset_op_counts() {
    COUNTS.with(|c| c.set(OpCounts::default()));
}

#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<C = Rational> {
    coeffs: Vec<C>,
}

pub type IntSeries = TruncatedSeries<Integer>;

impl<C: Coefficient> TruncatedSeries<C> {
    /// Series from its first `coeffs.len()` coefficients.
    pub fn new(coeffs: Vec<C>) -> Self {
        TruncatedSeries { coeffs }
    }

    /// Series known mod `t^order`; missing coefficients are zero, extra ones
    /// are dropped.
    pub fn from_coeffs(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order, C::from_i64(0));
        TruncatedSeries { coeffs }
    }

    pub fn from_i64s(values: &[i64], order: usize) -> Self {
        Self::from_coeffs(values.iter().map(|&v| C::from_i64(v)).collect(), order)
    }

    pub fn zero(order: usize) -> Self {
        Self::from_coeffs(Vec::new(), order)
    }

    pub fn constant(value: i64, order: usize) -> Self {
        Self::from_i64s(&[value], order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(1, order)
    }

    /// `c·t^k` mod `t^order`.
    pub fn monomial(c: i64, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k < order {
            s.coeffs[k] = C::from_i64(c);
        }
        s
    }

    /// Number of known coefficients.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Coefficient of `t^k`; zero for `k ≥ order`, where it is unknown.
    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(|| C::from_i64(0))
    }

    /// Index of the first nonzero coefficient, `order` for the zero series.
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(self.order())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation() == self.order()
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        TruncatedSeries {
            coeffs: self.coeffs[..n].to_vec(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let coeffs = (0..n).map(|k| self.coeffs[k].add(&rhs.coeffs[k])).collect();
        TruncatedSeries { coeffs }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let coeffs = (0..n).map(|k| self.coeffs[k].sub(&rhs.coeffs[k])).collect();
        TruncatedSeries { coeffs }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect(),
        }
    }

    pub fn scale_i64(&self, c: i64) -> Self {
        self.scale(&C::from_i64(c))
    }

    /// Multiply by `t^k`; the order grows by `k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut coeffs = vec![C::from_i64(0); k];
        coeffs.extend(self.coeffs.iter().cloned());
        TruncatedSeries { coeffs }
    }

    /// Divide by `t^k`; needs valuation ≥ k. The order shrinks by `k`.
    pub fn unshift(&self, k: usize) -> Result<Self> {
        if self.valuation() < k {
            return Err(Error::NonSeriesQuotient {
                dividend: self.valuation(),
                divisor: k,
            });
        }
        Ok(TruncatedSeries {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// Add `c·t^k` in place (no-op beyond the known order).
    pub fn add_monomial(&mut self, c: i64, k: usize) {
        if k < self.order() {
            self.coeffs[k] = self.coeffs[k].add(&C::from_i64(c));
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        bump(|c| c.mul += 1);
        self.mul_impl(rhs)
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        let n = (self.order() + rhs.valuation()).min(rhs.order() + self.valuation());
        TruncatedSeries {
            coeffs: C::mul_truncated(&self.coeffs, &rhs.coeffs, n),
        }
    }

    fn mul_to(&self, rhs: &Self, n: usize) -> Self {
        TruncatedSeries {
            coeffs: C::mul_truncated(&self.coeffs, &rhs.coeffs, n),
        }
    }

    /// `g` with `f·g ≡ 1 mod t^order`.
    pub fn reciprocal(&self) -> Result<Self> {
        bump(|c| c.reciprocal += 1);
        self.reciprocal_impl()
    }

    fn reciprocal_impl(&self) -> Result<Self> {
        let n = self.order();
        if n == 0 {
            return Ok(self.clone());
        }
        let f0 = &self.coeffs[0];
        if f0.is_zero() {
            return Err(Error::NonInvertible);
        }
        let unit = f0 == &C::from_i64(1) || f0 == &C::from_i64(-1);
        if C::FAST && unit && n > 32 {
            return Ok(self.reciprocal_newton(f0.clone()));
        }
        let mut g: Vec<C> = Vec::with_capacity(n);
        g.push(C::from_i64(1).div_exact(f0, 0)?);
        for k in 1..n {
            let mut acc = C::from_i64(0);
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    acc.add_mul(&self.coeffs[i], &g[k - i]);
                }
            }
            g.push(acc.neg().div_exact(f0, k)?);
        }
        Ok(TruncatedSeries { coeffs: g })
    }

    // f(0) = ±1, so every Newton step stays in the coefficient domain.
    fn reciprocal_newton(&self, f0: C) -> Self {
        let n = self.order();
        let mut g = TruncatedSeries { coeffs: vec![f0] };
        let mut k = 1;
        while k < n {
            let k2 = (2 * k).min(n);
            let f = self.truncate(k2);
            // 1 - f·g vanishes below t^k.
            let mut r = f.mul_to(&g, k2).neg();
            r.coeffs[..k].iter_mut().for_each(|c| *c = C::from_i64(0));
            let corr = g.mul_to(&r, k2);
            let mut next = g.coeffs.clone();
            next.resize(k2, C::from_i64(0));
            for (a, b) in next.iter_mut().zip(corr.coeffs.iter()).skip(k) {
                *a = a.add(b);
            }
            g = TruncatedSeries { coeffs: next };
            k = k2;
        }
        g
    }

    /// Square root with constant term 1 of a series with constant term 1.
    pub fn sqrt_one(&self) -> Result<Self> {
        bump(|c| c.sqrt += 1);
        let n = self.order();
        if n == 0 {
            return Ok(self.clone());
        }
        if self.coeffs[0] != C::from_i64(1) {
            return Err(Error::SqrtConstantTerm);
        }
        if C::FAST && n > 32 {
            return self.sqrt_newton();
        }
        let two = C::from_i64(2);
        let mut g: Vec<C> = Vec::with_capacity(n);
        g.push(C::from_i64(1));
        for k in 1..n {
            let mut acc = self.coeffs[k].clone();
            for i in 1..k {
                acc = acc.sub(&g[i].mul(&g[k - i]));
            }
            g.push(acc.div_exact(&two, k)?);
        }
        Ok(TruncatedSeries { coeffs: g })
    }

    // g ← (g + f/g)/2, doubling the number of correct terms each round.
    fn sqrt_newton(&self) -> Result<Self> {
        let n = self.order();
        let two = C::from_i64(2);
        let mut g = TruncatedSeries {
            coeffs: vec![C::from_i64(1)],
        };
        let mut k = 1;
        while k < n {
            let k2 = (2 * k).min(n);
            let gk = TruncatedSeries::from_coeffs(g.coeffs.clone(), k2);
            let inv = gk.reciprocal_impl()?;
            let q = self.truncate(k2).mul_to(&inv, k2);
            let coeffs = gk
                .coeffs
                .iter()
                .zip(q.coeffs.iter())
                .enumerate()
                .map(|(i, (a, b))| a.add(b).div_exact(&two, i))
                .collect::<Result<Vec<_>>>()?;
            g = TruncatedSeries { coeffs };
            k = k2;
        }
        Ok(g)
    }

    /// `f/g` for `valuation(g) ≤ valuation(f)`; the result is known mod
    /// `t^{min(order f, order g) - valuation(g)}`.
    pub fn divide_exact(&self, g: &Self) -> Result<Self> {
        bump(|c| c.divide += 1);
        let v = g.valuation();
        if v == g.order() {
            return Err(Error::NonInvertible);
        }
        let u = self.valuation();
        if u < v {
            return Err(Error::NonSeriesQuotient {
                dividend: u,
                divisor: v,
            });
        }
        let n = self.order().min(g.order()) - v;
        let num = TruncatedSeries {
            coeffs: self.coeffs[v..v + n].to_vec(),
        };
        let den = TruncatedSeries {
            coeffs: g.coeffs[v..v + n].to_vec(),
        };
        let d0 = &den.coeffs[0];
        if !C::FAST || d0 == &C::from_i64(1) || d0 == &C::from_i64(-1) {
            return Ok(num.mul_to(&den.reciprocal_impl()?, n));
        }
        // Long division keeps every partial quotient in the domain whenever
        // the full quotient is.
        let mut out: Vec<C> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = num.coeffs[k].clone();
            for i in 1..=k {
                if !den.coeffs[i].is_zero() {
                    acc = acc.sub(&den.coeffs[i].mul(&out[k - i]));
                }
            }
            out.push(acc.div_exact(d0, k)?);
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Value of the known polynomial part at a concrete point.
    pub fn eval_poly<R: Ring>(&self, x: &R, lift: impl Fn(&C) -> R) -> R {
        let mut acc = x.lift(0);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&lift(c));
        }
        acc
    }
}

impl TruncatedSeries<Integer> {
    pub fn to_rational(&self) -> TruncatedSeries<Rational> {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| Rational::from(c.clone())).collect(),
        }
    }
}

impl TruncatedSeries<Rational> {
    /// Integer coefficients, or the index of the first non-integer one.
    pub fn to_integer(&self) -> Result<TruncatedSeries<Integer>> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if c.denom() == &1 {
                    Ok(c.numer().clone())
                } else {
                    Err(Error::NonIntegral { index: i })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TruncatedSeries { coeffs })
    }
}

impl<C: Coefficient> Ring for TruncatedSeries<C> {
    fn lift(&self, value: i64) -> Self {
        Self::constant(value, self.order())
    }
    fn add(&self, rhs: &Self) -> Self {
        TruncatedSeries::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        TruncatedSeries::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        TruncatedSeries::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        TruncatedSeries::neg(self)
    }
    fn scale(&self, k: i64) -> Self {
        self.scale_i64(k)
    }
}

impl<C: Coefficient> fmt::Display for TruncatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mag = if mag == "1" && k > 0 { String::new() } else { mag };
            match k {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}t")?,
                _ => write!(f, "{mag}t^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(t^{})", self.order())
    }
}

impl<C: Coefficient> fmt::Debug for TruncatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = TruncatedSeries<Rational>;
    type Z = TruncatedSeries<Integer>;

    fn q(v: &[i64], n: usize) -> Q {
        Q::from_i64s(v, n)
    }

    #[test]
    fn basic_ring_operations() {
        assert_eq!(q(&[1, 1], 4).mul(&q(&[1, -1], 4)), q(&[1, 0, -1], 4));
        assert_eq!(Q::one(2).shift(3), q(&[0, 0, 0, 1], 5));
        let f = q(&[3, -1, 4], 3);
        assert_eq!(f.add(&Q::zero(3)), f);
        assert_eq!(f.sub(&f), Q::zero(3));
        assert_eq!(f.scale(&Rational::from((1, 2))).coeff(0), Rational::from((3, 2)));
    }

    #[test]
    fn valuation_conventions() {
        assert_eq!(q(&[0, 0, 5], 6).valuation(), 2);
        assert_eq!(Q::zero(7).valuation(), 7);
        assert!(Q::zero(7).is_zero());
    }

    #[test]
    fn products_keep_precision_of_high_valuation_factor() {
        // t²·(1 + t + …) known mod t^5 times 1 + t known mod t^5.
        let a = q(&[0, 0, 1, 1, 1], 5);
        let b = q(&[1, 1], 5);
        assert_eq!(a.mul(&b).order(), 5);
        // t³ known mod t^6 times t known mod t^4 is known mod t^7.
        let c = q(&[0, 0, 0, 1], 6);
        let d = q(&[0, 1], 4);
        assert_eq!(c.mul(&d), q(&[0, 0, 0, 0, 1], 7));
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(q(&[1, -1], 6).reciprocal().unwrap(), q(&[1, 1, 1, 1, 1, 1], 6));
        assert_eq!(Q::one(4).reciprocal().unwrap(), Q::one(4));
        assert_eq!(q(&[1, 0, -8], 7).reciprocal().unwrap(), q(&[1, 0, 8, 0, 64, 0, 512], 7));
        assert_eq!(q(&[0, 1], 3).reciprocal(), Err(Error::NonInvertible));
        let half = q(&[2], 3).reciprocal().unwrap();
        assert_eq!(half.coeff(0), Rational::from((1, 2)));
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(q(&[1, 0, -8], 8).sqrt_one().unwrap(), q(&[1, 0, -4, 0, -8, 0, -32], 8));
        assert_eq!(Q::one(5).sqrt_one().unwrap(), Q::one(5));
        assert_eq!(q(&[1, 2, 1], 6).sqrt_one().unwrap(), q(&[1, 1], 6));
        assert_eq!(q(&[4], 3).sqrt_one(), Err(Error::SqrtConstantTerm));
        // Integer series cannot hold sqrt(1 + t).
        assert_eq!(
            Z::from_i64s(&[1, 1], 3).sqrt_one(),
            Err(Error::NonIntegral { index: 1 })
        );
    }

    #[test]
    fn divide_exact_examples() {
        assert_eq!(q(&[0, 0, 1], 5).divide_exact(&q(&[0, 1], 5)).unwrap(), q(&[0, 1], 4));
        let f = q(&[0, 0, 4, 0, 8], 8);
        let g = q(&[0, 4], 8);
        assert_eq!(f.divide_exact(&g).unwrap(), q(&[0, 1, 0, 2], 7));
        assert!(matches!(
            Q::one(4).divide_exact(&q(&[0, 1], 4)),
            Err(Error::NonSeriesQuotient { .. })
        ));
    }

    #[test]
    fn integer_fast_paths_match_rationals() {
        let n = 150;
        let vals: Vec<i64> = (0..n as i64).map(|k| (k * 7919 % 23) - 11).collect();
        let mut f = vals.clone();
        f[0] = 1;
        let fz = Z::from_i64s(&f, n);
        let fq = Q::from_i64s(&f, n);
        assert_eq!(fz.reciprocal().unwrap().to_rational(), fq.reciprocal().unwrap());
        let gz = Z::from_i64s(&vals, n);
        assert_eq!(fz.mul(&gz).to_rational(), fq.mul(&Q::from_i64s(&vals, n)));
        let sq = fz.mul(&fz);
        assert_eq!(sq.sqrt_one().unwrap(), fz);
    }

    #[test]
    fn counters_track_nonlinear_calls() {
        reset_op_counts();
        let f = q(&[1, 1], 5);
        let _ = f.add(&f).shift(2);
        assert_eq!(op_counts(), OpCounts::default());
        let _ = f.mul(&f);
        let _ = f.reciprocal();
        assert_eq!(op_counts().mul, 1);
        assert_eq!(op_counts().reciprocal, 1);
    }

    #[test]
    fn display() {
        assert_eq!(q(&[1, -1, 0, 3], 4).to_string(), "1 - t + 3t^3 + O(t^4)");
        assert_eq!(Q::zero(2).to_string(), "0 + O(t^2)");
    }
}
