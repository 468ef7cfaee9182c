//! The five singular step sets and their kernels.
//!
//! For a step set `S` the kernel is `K(x,y) = xy - t·xy·Σ_{(i,j)∈S} x^i y^j`.
//! Writing the inventory as `y·Q_1(x) + Q_0(x) + Q_{-1}(x)/y` gives the
//! quadratic in `y`
//!
//! ```text
//! K(x,y) = -t·xQ_1(x)·y² + x(1 - t·Q_0(x))·y - t·xQ_{-1}(x)
//! ```
//!
//! and symmetrically in `x` with the `P_i(y)`. Every coefficient is affine in
//! `t`, so it is stored as a [`TLinear`] and can be read in the `t` variable
//! or, after `t = q/(1+q²)` and clearing the denominator, in `q`.

use std::fmt;
use std::str::FromStr;

use rug::Float;

use crate::error::{Error, Result};
use crate::numeric::{BigComplex, BigFloat};
use crate::ring::{eval_int_poly, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelId {
    A,
    B,
    C,
    D,
    E,
}

impl ModelId {
    pub const ALL: [ModelId; 5] = [ModelId::A, ModelId::B, ModelId::C, ModelId::D, ModelId::E];
    pub const SYMMETRIC: [ModelId; 3] = [ModelId::A, ModelId::B, ModelId::C];
    pub const ASYMMETRIC: [ModelId; 2] = [ModelId::D, ModelId::E];

    /// Symmetric under `x ↔ y`.
    pub fn is_symmetric(self) -> bool {
        matches!(self, ModelId::A | ModelId::B | ModelId::C)
    }

    pub fn step_set(self) -> StepSet {
        step_set(self)
    }

    /// `|S|`, the number of steps.
    pub fn cardinality(self) -> usize {
        match self {
            ModelId::A | ModelId::D => 3,
            ModelId::B | ModelId::E => 4,
            ModelId::C => 5,
        }
    }

    pub fn inventory(self) -> InventoryCounts {
        self.step_set().inventory()
    }

    pub fn oeis_tag(self) -> &'static str {
        match self {
            ModelId::A => "A151267",
            ModelId::B => "A151284",
            ModelId::C => "A151321",
            ModelId::D => "A151256",
            ModelId::E => "A151294",
        }
    }

    /// `S_0 .. S_10` as listed in the OEIS entry.
    pub fn oeis_terms(self) -> [u64; 11] {
        match self {
            ModelId::A => [1, 1, 3, 7, 21, 55, 165, 457, 1371, 3909, 11727],
            ModelId::B => [1, 2, 6, 20, 70, 254, 942, 3550, 13532, 52030, 201386],
            ModelId::C => [1, 3, 13, 59, 279, 1341, 6527, 31995, 157659, 779601, 3864985],
            ModelId::D => [1, 1, 2, 4, 10, 23, 61, 153, 418, 1100, 3064],
            ModelId::E => [1, 2, 7, 24, 91, 339, 1316, 5064, 19876, 77655, 306653],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ModelId::A => "A",
            ModelId::B => "B",
            ModelId::C => "C",
            ModelId::D => "D",
            ModelId::E => "E",
        }
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(ModelId::A),
            "B" | "b" => Ok(ModelId::B),
            "C" | "c" => Ok(ModelId::C),
            "D" | "d" => Ok(ModelId::D),
            "E" | "e" => Ok(ModelId::E),
            other => Err(Error::InvalidArgument(format!("unknown model {other:?}"))),
        }
    }
}

pub const NW: (i32, i32) = (-1, 1);
pub const N: (i32, i32) = (0, 1);
pub const NE: (i32, i32) = (1, 1);
pub const E: (i32, i32) = (1, 0);
pub const SE: (i32, i32) = (1, -1);

/// A set of small steps `(i, j) ∈ {-1,0,1}² \ {(0,0)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepSet {
    steps: Vec<(i32, i32)>,
}

impl StepSet {
    pub fn new(steps: Vec<(i32, i32)>) -> Result<Self> {
        for (k, &(i, j)) in steps.iter().enumerate() {
            if !(-1..=1).contains(&i) || !(-1..=1).contains(&j) || (i, j) == (0, 0) {
                return Err(Error::InvalidArgument(format!("({i},{j}) is not a small step")));
            }
            if steps[..k].contains(&(i, j)) {
                return Err(Error::InvalidArgument(format!("duplicate step ({i},{j})")));
            }
        }
        Ok(StepSet { steps })
    }

    pub fn steps(&self) -> &[(i32, i32)] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn contains(&self, step: (i32, i32)) -> bool {
        self.steps.contains(&step)
    }

    /// Coefficients of `x·Q_j(x)`: entry `k` counts the step `(k-1, j)`.
    pub fn y_layer(&self, j: i32) -> [i64; 3] {
        let mut c = [0; 3];
        for &(i, jj) in &self.steps {
            if jj == j {
                c[(i + 1) as usize] += 1;
            }
        }
        c
    }

    /// Coefficients of `y·P_i(y)`: entry `k` counts the step `(i, k-1)`.
    pub fn x_layer(&self, i: i32) -> [i64; 3] {
        let mut c = [0; 3];
        for &(ii, j) in &self.steps {
            if ii == i {
                c[(j + 1) as usize] += 1;
            }
        }
        c
    }

    pub fn inventory(&self) -> InventoryCounts {
        let count = |layer: [i64; 3]| layer.iter().sum::<i64>() as u32;
        InventoryCounts {
            p_minus1: count(self.x_layer(-1)),
            p_0: count(self.x_layer(0)),
            p_1: count(self.x_layer(1)),
            q_minus1: count(self.y_layer(-1)),
            q_0: count(self.y_layer(0)),
            q_1: count(self.y_layer(1)),
        }
    }

    /// The inventory `Σ x^i y^j` as a 3×3 table indexed `[i+1][j+1]`.
    pub fn inventory_table(&self) -> [[i64; 3]; 3] {
        let mut t = [[0; 3]; 3];
        for &(i, j) in &self.steps {
            t[(i + 1) as usize][(j + 1) as usize] += 1;
        }
        t
    }
}

pub fn step_set(model: ModelId) -> StepSet {
    let steps = match model {
        ModelId::A => vec![NW, NE, SE],
        ModelId::B => vec![NW, N, E, SE],
        ModelId::C => vec![NW, N, NE, E, SE],
        ModelId::D => vec![NW, N, SE],
        ModelId::E => vec![NW, N, NE, SE],
    };
    StepSet { steps }
}

/// Step counts by x-coordinate (`p_i = P_i(1)`) and by y-coordinate
/// (`q_j = Q_j(1)`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InventoryCounts {
    pub p_minus1: u32,
    pub p_0: u32,
    pub p_1: u32,
    pub q_minus1: u32,
    pub q_0: u32,
    pub q_1: u32,
}

impl InventoryCounts {
    pub fn total(&self) -> u32 {
        self.p_minus1 + self.p_0 + self.p_1
    }

    /// `p_0 + 2√(p_1·p_{-1})`, the growth rate of half-plane excursions
    /// bounded by the vertical axis.
    pub fn subdominant_base(&self, prec: u32) -> BigFloat {
        let root = Float::with_val(prec, self.p_1 * self.p_minus1).sqrt();
        Float::with_val(prec, self.p_0) + root * 2u32
    }
}

/// `constant + slope·t`.
#[derive(Clone, Debug, PartialEq)]
pub struct TLinear<R> {
    pub constant: R,
    pub slope: R,
}

impl<R: Ring> TLinear<R> {
    /// Value at a concrete `t`.
    pub fn at(&self, t: &R) -> R {
        self.constant.add(&self.slope.mul(t))
    }

    /// `(1+q²)·(constant + slope·q/(1+q²)) = (1+q²)·constant + q·slope`.
    pub fn in_q(&self, q: &R) -> R {
        let one_plus_q2 = q.lift(1).add(&q.mul(q));
        one_plus_q2.mul(&self.constant).add(&q.mul(&self.slope))
    }
}

/// `a2·v² + a1·v + a0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Quadratic<R> {
    pub a2: R,
    pub a1: R,
    pub a0: R,
}

impl<R: Ring> Quadratic<R> {
    pub fn eval(&self, v: &R) -> R {
        self.a2.mul(v).add(&self.a1).mul(v).add(&self.a0)
    }
}

impl<R> Quadratic<R> {
    pub fn map<S>(&self, f: impl Fn(&R) -> S) -> Quadratic<S> {
        Quadratic {
            a2: f(&self.a2),
            a1: f(&self.a1),
            a0: f(&self.a0),
        }
    }
}

fn kernel_from_layers<R: Ring>(layers: [[i64; 3]; 3], v: &R) -> Quadratic<TLinear<R>> {
    let zero = v.lift(0);
    let [minus, zero_layer, plus] = layers;
    Quadratic {
        a2: TLinear {
            constant: zero.clone(),
            slope: eval_int_poly(&plus, v).neg(),
        },
        a1: TLinear {
            constant: v.clone(),
            slope: eval_int_poly(&zero_layer, v).neg(),
        },
        a0: TLinear {
            constant: zero,
            slope: eval_int_poly(&minus, v).neg(),
        },
    }
}

/// Kernel as a quadratic in `y`, coefficients affine in `t`:
/// `a2 = -x·t·Q_1(x)`, `a1 = x(1 - t·Q_0(x))`, `a0 = -x·t·Q_{-1}(x)`.
pub fn kernel_coeffs_t<R: Ring>(model: ModelId, x: &R) -> Quadratic<TLinear<R>> {
    let s = model.step_set();
    kernel_from_layers([s.y_layer(-1), s.y_layer(0), s.y_layer(1)], x)
}

/// Kernel as a quadratic in `x` with coefficients in `y` and `t`.
pub fn x_kernel_coeffs_t<R: Ring>(model: ModelId, y: &R) -> Quadratic<TLinear<R>> {
    let s = model.step_set();
    kernel_from_layers([s.x_layer(-1), s.x_layer(0), s.x_layer(1)], y)
}

/// `y`-quadratic kernel after `t = q/(1+q²)` with the `(1+q²)` cleared, in
/// any ring (used symbolically with rational `q` in tests).
pub fn kernel_coeffs_in_q<R: Ring>(model: ModelId, x: &R, q: &R) -> Quadratic<R> {
    kernel_coeffs_t(model, x).map(|c| c.in_q(q))
}

fn check_q(q: &BigComplex) -> Result<()> {
    if q.is_zero() {
        return Err(Error::SingularParameter("q = 0"));
    }
    if q.lift(1).add(&q.mul(q)).is_zero() {
        return Err(Error::SingularParameter("1 + q² = 0"));
    }
    Ok(())
}

pub fn kernel_coeffs_q(model: ModelId, x: &BigComplex, q: &BigComplex) -> Result<Quadratic<BigComplex>> {
    check_q(q)?;
    Ok(kernel_coeffs_in_q(model, x, q))
}

pub fn x_kernel_coeffs_q(model: ModelId, y: &BigComplex, q: &BigComplex) -> Result<Quadratic<BigComplex>> {
    if model.is_symmetric() {
        return Err(Error::UnsupportedModel {
            model,
            operation: "x_kernel_coeffs_q",
        });
    }
    check_q(q)?;
    Ok(x_kernel_coeffs_t(model, y).map(|c| c.in_q(q)))
}

/// Which variable a kernel root is solved for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `Y_±(x)`: roots of the kernel in `y`.
    Y,
    /// `X_±(y)`: roots of the kernel in `x`.
    X,
}

/// Branch of the quadratic formula. `Plus` is the small root `Y_+`/`X_+`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn flip(self) -> Self {
        match self {
            Branch::Plus => Branch::Minus,
            Branch::Minus => Branch::Plus,
        }
    }
}

/// Kernel reduced by the substitution `v = u·r` (`u` the known variable):
///
/// ```text
/// -t·w(u)·r² + (1 - t·e·u)·r - t = 0
/// ```
///
/// This holds for every singular model because the only step leaving the
/// solved-for axis downward is `SE` (resp. `NW`) and no step points
/// straight back (`W`, resp. `S`). The small root `r = t + O(t²)` has no
/// negative powers of `u`, which keeps all iterate arithmetic inside power
/// series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReducedKernel {
    /// Coefficients of `w(u) = u·Q_1(u)` (or `u·P_1(u)`).
    pub w: [i64; 3],
    /// `e` with `Q_0(u) = e·u` (or `P_0(u) = e·u`).
    pub e: i64,
}

impl ReducedKernel {
    pub fn new(model: ModelId, side: Side) -> Self {
        let s = model.step_set();
        let (minus, zero, plus) = match side {
            Side::Y => (s.y_layer(-1), s.y_layer(0), s.y_layer(1)),
            Side::X => (s.x_layer(-1), s.x_layer(0), s.x_layer(1)),
        };
        debug_assert_eq!(minus, [0, 0, 1]);
        debug_assert_eq!(zero[0], 0);
        ReducedKernel { w: plus, e: zero[2] }
    }

    /// The root `r` at a real point, via the cancellation-free form
    /// `r = 2t / ((1 - teu) + √((1 - teu)² - 4t²w(u)))`.
    pub fn small_root_real(&self, u: &BigFloat, t: &BigFloat) -> BigFloat {
        let p = u.prec().max(t.prec());
        let b = Float::with_val(p, 1) - Float::with_val(p, t * u) * self.e;
        let w = eval_real_poly(&self.w, u);
        let t2 = Float::with_val(p, t.square_ref());
        let disc = Float::with_val(p, b.square_ref()) - t2 * w * 4u32;
        let den = b + disc.sqrt();
        Float::with_val(p, t * 2u32) / den
    }

    /// `Y_±(u; q)` (or `X_±`) in the `q` variable:
    /// `u/(2q·w(u)) · ((1+q²-q·e·u) ∓ √((1+q²-q·e·u)² - 4q²w(u)))`
    /// with the principal square root.
    pub fn root_q(&self, u: &BigComplex, q: &BigComplex, branch: Branch) -> Result<BigComplex> {
        check_q(q)?;
        let w = eval_int_poly(&self.w, u);
        if w.is_zero() {
            return Err(Error::SingularParameter("w(u) = 0"));
        }
        let b = q.lift(1).add(&q.mul(q)).sub(&q.mul(u).scale(self.e));
        let disc = b.mul(&b).sub(&q.mul(q).mul(&w).scale(4));
        let s = disc.sqrt();
        let num = match branch {
            Branch::Plus => b.sub(&s),
            Branch::Minus => b.add(&s),
        };
        Ok(u.mul(&num).div(&q.mul(&w).scale(2)))
    }
}

fn eval_real_poly(coeffs: &[i64; 3], x: &BigFloat) -> BigFloat {
    let p = x.prec();
    let mut acc = Float::new(p);
    for &c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Rational;

    #[test]
    fn step_sets_match_definitions() {
        assert_eq!(step_set(ModelId::A).steps(), &[(-1, 1), (1, 1), (1, -1)]);
        assert_eq!(step_set(ModelId::D).steps(), &[(-1, 1), (0, 1), (1, -1)]);
        assert_eq!(step_set(ModelId::E).len(), 4);
        for m in ModelId::ALL {
            let s = m.step_set();
            assert_eq!(s.len(), m.cardinality());
            assert!(s.contains(NW) && s.contains(SE));
            assert!(StepSet::new(s.steps().to_vec()).is_ok());
        }
        assert!(ModelId::A.is_symmetric() && !ModelId::D.is_symmetric() && !ModelId::E.is_symmetric());
    }

    #[test]
    fn step_set_rejects_bad_input() {
        assert!(StepSet::new(vec![NW, NW]).is_err());
        assert!(StepSet::new(vec![(2, 0)]).is_err());
        assert!(StepSet::new(vec![(0, 0)]).is_err());
    }

    #[test]
    fn inventory_counts() {
        for m in ModelId::ALL {
            let inv = m.inventory();
            assert_eq!(inv.total() as usize, m.cardinality());
            assert_eq!(inv.q_minus1 + inv.q_0 + inv.q_1, inv.total());
            assert_eq!(inv.p_minus1, 1);
            assert!(inv.p_0 <= 1);
            assert!((1..=3).contains(&inv.p_1));
            let base = inv.subdominant_base(64).to_f64();
            // D is the boundary case: 1 + 2 = 3 = |S|.
            if m == ModelId::D {
                assert_eq!(base, 3.0);
            } else {
                assert!(base < m.cardinality() as f64);
            }
        }
        let a = ModelId::A.inventory();
        assert_eq!((a.p_minus1, a.p_0, a.p_1), (1, 0, 2));
    }

    #[test]
    fn layers_rebuild_the_inventory_both_ways() {
        for m in ModelId::ALL {
            let s = m.step_set();
            let mut by_y = [[0i64; 3]; 3];
            let mut by_x = [[0i64; 3]; 3];
            for j in -1..=1 {
                for (k, c) in s.y_layer(j).iter().enumerate() {
                    by_y[k][(j + 1) as usize] += c;
                }
            }
            for i in -1..=1 {
                for (k, c) in s.x_layer(i).iter().enumerate() {
                    by_x[(i + 1) as usize][k] += c;
                }
            }
            assert_eq!(by_y, s.inventory_table());
            assert_eq!(by_x, s.inventory_table());
        }
    }

    fn r(v: i64) -> Rational {
        Rational::from(v)
    }

    #[test]
    fn kernel_in_t_model_a_and_b() {
        // Model A at x = 2: a2 = -t(1+x²), a1 = x, a0 = -t·x².
        let k = kernel_coeffs_t(ModelId::A, &r(2));
        assert_eq!(
            k.a2,
            TLinear {
                constant: r(0),
                slope: r(-5)
            }
        );
        assert_eq!(
            k.a1,
            TLinear {
                constant: r(2),
                slope: r(0)
            }
        );
        assert_eq!(
            k.a0,
            TLinear {
                constant: r(0),
                slope: r(-4)
            }
        );
        // Model B at x = 1: (-2t, 1 - t, -t).
        let k = kernel_coeffs_t(ModelId::B, &r(1));
        assert_eq!(
            k.a2,
            TLinear {
                constant: r(0),
                slope: r(-2)
            }
        );
        assert_eq!(
            k.a1,
            TLinear {
                constant: r(1),
                slope: r(-1)
            }
        );
        assert_eq!(
            k.a0,
            TLinear {
                constant: r(0),
                slope: r(-1)
            }
        );
    }

    #[test]
    fn kernel_at_t_zero_is_xy() {
        for m in ModelId::ALL {
            let x = Rational::from((7, 3));
            let k = kernel_coeffs_t(m, &x).map(|c| c.at(&r(0)));
            assert_eq!(
                k,
                Quadratic {
                    a2: r(0),
                    a1: x.clone(),
                    a0: r(0)
                }
            );
        }
    }

    #[test]
    fn kernel_in_q_at_x_one() {
        let q = Rational::from((2, 5));
        let one_q2 = Rational::from(1) + q.clone() * &q;
        let expect = |a2: i64, a0: i64| Quadratic {
            a2: Rational::from(a2) * &q,
            a1: one_q2.clone(),
            a0: Rational::from(a0) * &q,
        };
        assert_eq!(kernel_coeffs_in_q(ModelId::A, &r(1), &q), expect(-2, -1));
        assert_eq!(kernel_coeffs_in_q(ModelId::D, &r(1), &q), expect(-2, -1));
        assert_eq!(kernel_coeffs_in_q(ModelId::E, &r(1), &q), expect(-3, -1));
    }

    #[test]
    fn x_kernel_in_q() {
        // Model D, y = 1, q = 1: (-1, 1, -1).
        let one = BigComplex::from_int(1, 64);
        let k = x_kernel_coeffs_q(ModelId::D, &one, &one).unwrap();
        assert_eq!(
            k.map(|c| c.to_f64().0),
            Quadratic {
                a2: -1.0,
                a1: 1.0,
                a0: -1.0
            }
        );
        // Model E regrouped by powers of x at y = 3, q = 2:
        // (-q(1+y²), (1+q²)y - qy², -qy²) = (-20, -3, -18).
        let (y, q) = (BigComplex::from_int(3, 64), BigComplex::from_int(2, 64));
        let k = x_kernel_coeffs_q(ModelId::E, &y, &q).unwrap();
        assert_eq!(
            k.map(|c| c.to_f64().0),
            Quadratic {
                a2: -20.0,
                a1: -3.0,
                a0: -18.0
            }
        );
        assert!(x_kernel_coeffs_q(ModelId::A, &y, &q).is_err());
    }

    #[test]
    fn q_kernel_rejects_singular_q() {
        let x = BigComplex::from_int(1, 64);
        assert!(kernel_coeffs_q(ModelId::A, &x, &BigComplex::zero(64)).is_err());
        assert!(kernel_coeffs_q(ModelId::A, &x, &BigComplex::i(64)).is_err());
    }

    #[test]
    fn q_kernel_is_scaled_t_kernel() {
        // Symbolic check at a handful of rational points.
        for m in ModelId::ALL {
            for (qn, qd) in [(1, 3), (-2, 7), (5, 4)] {
                let q = Rational::from((qn, qd));
                let x = Rational::from((3, 11));
                let t = q.clone() / (Rational::from(1) + q.clone() * &q);
                let scale = Rational::from(1) + q.clone() * &q;
                let via_t = kernel_coeffs_t(m, &x).map(|c| c.at(&t) * scale.clone());
                assert_eq!(via_t, kernel_coeffs_in_q(m, &x, &q));
            }
        }
    }

    #[test]
    fn reduced_kernel_data() {
        assert_eq!(
            ReducedKernel::new(ModelId::A, Side::Y),
            ReducedKernel { w: [1, 0, 1], e: 0 }
        );
        assert_eq!(
            ReducedKernel::new(ModelId::B, Side::Y),
            ReducedKernel { w: [1, 1, 0], e: 1 }
        );
        assert_eq!(
            ReducedKernel::new(ModelId::D, Side::X),
            ReducedKernel { w: [1, 0, 0], e: 1 }
        );
        assert_eq!(
            ReducedKernel::new(ModelId::E, Side::X),
            ReducedKernel { w: [1, 0, 1], e: 1 }
        );
        for m in ModelId::SYMMETRIC {
            assert_eq!(ReducedKernel::new(m, Side::X), ReducedKernel::new(m, Side::Y));
        }
    }

    #[test]
    fn q_roots_satisfy_vieta() {
        let prec = 128;
        let q = BigComplex::from_f64(0.3, 0.2, prec);
        let x = BigComplex::from_f64(0.7, -0.1, prec);
        for m in ModelId::ALL {
            let rk = ReducedKernel::new(m, Side::Y);
            let yp = rk.root_q(&x, &q, Branch::Plus).unwrap();
            let ym = rk.root_q(&x, &q, Branch::Minus).unwrap();
            let k = kernel_coeffs_q(m, &x, &q).unwrap();
            assert!(k.eval(&yp).abs() < 1e-30);
            assert!(k.eval(&ym).abs() < 1e-30);
            let prod = yp.mul(&ym);
            let want = k.a0.div(&k.a2);
            assert!(prod.dist(&want) < 1e-30);
            let recip_sum = yp.recip().add(&ym.recip());
            let want = k.a1.neg().div(&k.a0);
            assert!(recip_sum.dist(&want) < 1e-28);
        }
    }
}
