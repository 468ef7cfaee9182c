//! Complex roots of integer polynomials.
//!
//! Each squarefree factor is solved separately: an `f64` Aberth-Ehrlich pass
//! gives starting points, then the same iteration runs in multiprecision
//! until the corrections vanish at working precision. A root is accepted
//! when `|f(r)| < 2^(-prec/2)` on its squarefree factor; otherwise the
//! precision is doubled (twice at most) and the refinement resumes.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::models::ModelId;
use crate::numeric::{BigComplex, BigFloat};
use crate::ring::Ring;

use super::poly::IntPolynomial;

/// Where the points live: the `q` plane or the `t = q/(1+q²)` plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Plane {
    Q,
    T,
}

impl Plane {
    pub fn label(self) -> &'static str {
        match self {
            Plane::Q => "q",
            Plane::T => "t",
        }
    }
}

impl std::str::FromStr for Plane {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "q" => Ok(Plane::Q),
            "t" => Ok(Plane::T),
            _ => Err(Error::InvalidArgument(format!("unknown plane {s:?} (expected q or t)"))),
        }
    }
}

/// Which polynomial a root set came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// An arbitrary polynomial.
    Poly,
    Sigma,
    /// `ω^k` with `k` in 1..=4.
    Omega(u8),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Poly => write!(f, "poly"),
            Family::Sigma => write!(f, "sigma"),
            Family::Omega(k) => write!(f, "omega{k}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Root {
    pub value: BigComplex,
    pub multiplicity: u32,
    /// `|f(r)|` on the squarefree factor containing `r`.
    pub residual: BigFloat,
}

#[derive(Clone, Debug)]
pub struct RootSet {
    pub model: Option<ModelId>,
    pub family: Family,
    pub n: usize,
    pub plane: Plane,
    /// Distinct roots; repeated roots carry their multiplicity.
    pub roots: Vec<Root>,
}

impl RootSet {
    /// Roots listed with repetition.
    pub fn expanded(&self) -> Vec<BigComplex> {
        self.roots
            .iter()
            .flat_map(|r| std::iter::repeat_n(r.value.clone(), r.multiplicity as usize))
            .collect()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity as usize).sum()
    }

    /// Roots other than `0` and `±1`, which are never poles of the iterates.
    pub fn nontrivial(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| {
            let (re, im) = r.value.to_f64();
            let z = Complex64::new(re, im);
            z.norm() > 1e-30 && (z - 1.0).norm() > 1e-30 && (z + 1.0).norm() > 1e-30
        })
    }

    /// Map to the `t` plane when asked; `q`-plane requests leave the set as is.
    pub fn with_plane(self, plane: Plane) -> RootSet {
        match plane {
            Plane::Q => self,
            Plane::T => self.to_t_plane(),
        }
    }

    /// Image under `t = q/(1+q²)`. Roots at `±i` have no image and are
    /// dropped.
    pub fn to_t_plane(&self) -> RootSet {
        if self.plane == Plane::T {
            return self.clone();
        }
        let roots = self
            .roots
            .iter()
            .filter_map(|r| {
                super::t_plane_map(&r.value).ok().map(|t| Root {
                    value: t,
                    multiplicity: r.multiplicity,
                    residual: r.residual.clone(),
                })
            })
            .collect();
        RootSet {
            plane: Plane::T,
            roots,
            ..self.clone()
        }
    }
}

/// All complex roots of `p`, certified at `precision_bits`.
pub fn find_roots(p: &IntPolynomial, precision_bits: u32) -> Result<RootSet> {
    if p.is_zero() {
        return Err(Error::InvalidArgument(
            "the zero polynomial has no finite root set".into(),
        ));
    }
    let prec = precision_bits.max(64);
    let mut roots = Vec::new();
    let zeros = p.low_zeros();
    if zeros > 0 {
        roots.push(Root {
            value: BigComplex::zero(prec),
            multiplicity: zeros as u32,
            residual: BigFloat::new(prec),
        });
    }
    for (factor, mult) in p.strip_low_zeros().squarefree_decomposition() {
        for (value, residual) in solve_squarefree(&factor, prec)? {
            roots.push(Root {
                value,
                multiplicity: mult,
                residual,
            });
        }
    }
    sort_roots(&mut roots);
    Ok(RootSet {
        model: None,
        family: Family::Poly,
        n: 0,
        plane: Plane::Q,
        roots,
    })
}

fn sort_roots(roots: &mut [Root]) {
    roots.sort_by(|a, b| {
        let (ar, ai) = a.value.to_f64();
        let (br, bi) = b.value.to_f64();
        ar.total_cmp(&br).then(ai.total_cmp(&bi))
    });
}

fn solve_squarefree(f: &IntPolynomial, prec: u32) -> Result<Vec<(BigComplex, BigFloat)>> {
    let d = f.degree().unwrap_or(0);
    match d {
        0 => return Ok(Vec::new()),
        1 => {
            let c = f.coeffs();
            let mut x = BigComplex::from_real(&(-BigFloat::with_val(prec, &c[0])));
            x.re /= &c[1];
            let r = f.eval_complex(&x).abs();
            return Ok(vec![(x, r)]);
        }
        _ => {}
    }
    let mut z: Vec<BigComplex> = aberth_f64(&f.to_f64s())
        .into_iter()
        .map(|c| BigComplex::from_c64(c, prec))
        .collect();
    let df = f.derivative();
    let mut p = prec;
    for _ in 0..3 {
        for r in z.iter_mut() {
            r.set_prec(p);
        }
        aberth_mp(f, &df, &mut z, p);
        let bound = BigFloat::with_val(p, 1) >> (prec / 2);
        let residuals: Vec<BigFloat> = z.iter().map(|r| f.eval_complex(r).abs()).collect();
        if residuals.iter().all(|r| *r < bound) {
            return Ok(z
                .into_iter()
                .zip(residuals)
                .map(|(mut r, mut e)| {
                    r.set_prec(prec);
                    e.set_prec(prec);
                    (r, e)
                })
                .collect());
        }
        p *= 2;
    }
    Err(Error::NoConvergence { precision: p / 2 })
}

fn horner_c64(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut dv = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dv = dv * z + v;
        v = v * z + a;
    }
    (v, dv)
}

/// Aberth-Ehrlich in double precision. The result is only a warm start.
fn aberth_f64(c: &[f64]) -> Vec<Complex64> {
    let d = c.len() - 1;
    let lead = c[d];
    let c: Vec<f64> = c.iter().map(|a| a / lead).collect();
    // Fujiwara-style radius, then spread the guesses on that circle.
    let radius = (0..d)
        .map(|k| (c[k].abs()).powf(1.0 / (d - k) as f64))
        .fold(0.0_f64, f64::max)
        .clamp(1e-3, 1e3);
    let r0 = (c[0].abs().powf(1.0 / d as f64)).clamp(1e-3, radius);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            let a = 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.4;
            Complex64::from_polar(r0, a)
        })
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0_f64;
        for k in 0..d {
            let (v, dv) = horner_c64(&c, z[k]);
            if v == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = v / dv;
            let s: Complex64 = (0..d).filter(|&j| j != k).map(|j| 1.0 / (z[k] - z[j])).sum();
            let w = ratio / (1.0 - ratio * s);
            if w.is_finite() {
                z[k] -= w;
                moved = moved.max(w.norm() / z[k].norm().max(1.0));
            }
        }
        if moved < 1e-14 {
            break;
        }
    }
    z
}

/// Corrections stall at the evaluation noise floor, so iteration stops once
/// every step is below `2^(-prec/2 - 16)` relative, after one more sweep.
fn aberth_mp(f: &IntPolynomial, df: &IntPolynomial, z: &mut [BigComplex], prec: u32) {
    let tol = BigFloat::with_val(prec, 1) >> (prec / 2 + 16);
    for _ in 0..100 {
        if aberth_sweep(f, df, z, prec, &tol) {
            aberth_sweep(f, df, z, prec, &tol);
            break;
        }
    }
}

/// One Gauss-Seidel Aberth sweep; true if every correction was below `tol`.
fn aberth_sweep(f: &IntPolynomial, df: &IntPolynomial, z: &mut [BigComplex], prec: u32, tol: &BigFloat) -> bool {
    let d = z.len();
    let one = BigComplex::from_int(1, prec);
    let unit = BigFloat::with_val(prec, 1);
    let mut done = true;
    for k in 0..d {
        let v = f.eval_complex(&z[k]);
        if v.is_zero() {
            continue;
        }
        let dv = df.eval_complex(&z[k]);
        let ratio = v.div(&dv);
        let mut s = BigComplex::zero(prec);
        for j in 0..d {
            if j != k {
                s = s.add(&z[k].sub(&z[j]).recip());
            }
        }
        let w = ratio.div(&one.sub(&ratio.mul(&s)));
        if !w.is_finite() {
            continue;
        }
        z[k] = z[k].sub(&w);
        let scale = z[k].abs().max(&unit).clone();
        if w.abs() > BigFloat::with_val(prec, tol * &scale) {
            done = false;
        }
    }
    done
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(z: &BigComplex, re: f64, im: f64) -> bool {
        let (a, b) = z.to_f64();
        (a - re).abs() < 1e-12 && (b - im).abs() < 1e-12
    }

    #[test]
    fn quadratic_and_multiplicity() {
        // (q-1)²(q+1)² · 2
        let p = IntPolynomial::from_i64s(&[2, 0, -4, 0, 2]);
        let rs = find_roots(&p, 128).unwrap();
        assert_eq!(rs.total_multiplicity(), 4);
        assert_eq!(rs.roots.len(), 2);
        assert!(rs.roots.iter().all(|r| r.multiplicity == 2));
        assert!(close(&rs.roots[0].value, -1.0, 0.0));
        assert!(close(&rs.roots[1].value, 1.0, 0.0));
    }

    #[test]
    fn zero_roots_reported() {
        let p = IntPolynomial::from_i64s(&[0, 0, 1, 0, 1]);
        let rs = find_roots(&p, 128).unwrap();
        assert_eq!(rs.total_multiplicity(), 4);
        assert!(rs.roots.iter().any(|r| r.value.is_zero() && r.multiplicity == 2));
        assert!(rs.roots.iter().any(|r| close(&r.value, 0.0, 1.0)));
    }

    #[test]
    fn residuals_are_tiny() {
        let p = IntPolynomial::from_i64s(&[1, -3, 5, 0, -7, 2, 11, 0, 0, 1]);
        let rs = find_roots(&p, 256).unwrap();
        assert_eq!(rs.total_multiplicity(), 9);
        for r in &rs.roots {
            assert!(p.eval_complex(&r.value).abs() < BigFloat::with_val(256, 1) >> 128);
        }
    }

    #[test]
    fn cyclotomic_on_unit_circle() {
        // q^12 - 1
        let mut c = vec![0; 13];
        c[0] = -1;
        c[12] = 1;
        let rs = find_roots(&IntPolynomial::from_i64s(&c), 128).unwrap();
        assert_eq!(rs.roots.len(), 12);
        for r in &rs.roots {
            let m = r.value.abs().to_f64();
            assert!((m - 1.0).abs() < 1e-30);
        }
    }

    #[test]
    fn rejects_zero_polynomial() {
        assert!(find_roots(&IntPolynomial::zero(), 128).is_err());
    }
}
