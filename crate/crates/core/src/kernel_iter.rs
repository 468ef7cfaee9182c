//! The iterated kernel method in the `t` variable.
//!
//! The small kernel roots are composed with themselves starting from `x = 1`
//! and the counting series is assembled from a telescoping sum over the
//! iterates. Everything here is exact.
//!
//! For symmetric models `Y_n(1)` is the `n`-fold composite of `Y_+` at 1 and
//!
//! ```text
//! S(t) = (1 - 2·Σ_{n≥0} (-1)^n Y_n(1)·Y_{n+1}(1)) / (1 - |S|t).
//! ```
//!
//! For the asymmetric models the two roots alternate: `χ_0 = 1`,
//! `χ_{n+1} = X_+(Y_+(χ_n))` and `Υ_0 = 1`, `Υ_{n+1} = Y_+(X_+(Υ_n))`, with
//!
//! ```text
//! S(t) = (1 - Σ_n (χ_n - χ_{n+1})·Y_+(χ_n) - Σ_n X_+(Υ_n)·(Υ_n - Υ_{n+1})) / (1 - |S|t).
//! ```

use crate::error::{Error, Result};
use crate::models::{kernel_coeffs_t, x_kernel_coeffs_t, ModelId, Quadratic, ReducedKernel, Side, TLinear};
use crate::ring::eval_int_poly;
use crate::series::{Coefficient, TruncatedSeries};

type Series<C> = TruncatedSeries<C>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IterateKind {
    /// `Y_n(1)`.
    Y,
    /// `χ_n(1)`.
    Chi,
    /// `Υ_n(1)`.
    Upsilon,
    /// `Y_+(χ_n(1))`.
    YPlusOfChi,
    /// `X_+(Υ_n(1))`.
    XPlusOfUpsilon,
}

#[derive(Clone, Debug)]
pub struct IterateFamily<C: Coefficient> {
    pub model: ModelId,
    pub kind: IterateKind,
    pub items: Vec<Series<C>>,
}

/// The four families produced by [`iterate_asymmetric`].
#[derive(Clone, Debug)]
pub struct AsymmetricIterates<C: Coefficient> {
    pub chi: IterateFamily<C>,
    pub upsilon: IterateFamily<C>,
    pub y_plus_of_chi: IterateFamily<C>,
    pub x_plus_of_upsilon: IterateFamily<C>,
}

fn affine_to_series<C: Coefficient>(c: &TLinear<Series<C>>) -> Series<C> {
    c.constant.add(&c.slope.shift(1))
}

/// Kernel coefficients in `y` as series, with `x` a series.
pub fn kernel_series<C: Coefficient>(model: ModelId, x: &Series<C>) -> Quadratic<Series<C>> {
    kernel_coeffs_t(model, x).map(affine_to_series)
}

/// Kernel coefficients in `x` as series, with `y` a series.
pub fn x_kernel_series<C: Coefficient>(model: ModelId, y: &Series<C>) -> Quadratic<Series<C>> {
    x_kernel_coeffs_t(model, y).map(affine_to_series)
}

/// `K(x, y)` as a series.
pub fn kernel_residual<C: Coefficient>(model: ModelId, x: &Series<C>, y: &Series<C>) -> Series<C> {
    let k = kernel_series(model, x);
    k.a2.mul(y).mul(y).add(&k.a1.mul(y)).add(&k.a0)
}

// Small root `u·r` of the reduced kernel, known to the order of `u`.
fn small_root<C: Coefficient>(rk: &ReducedKernel, u: &Series<C>) -> Result<Series<C>> {
    let n = u.order();
    if n == 0 {
        return Err(Error::InsufficientOrder { have: 0, need: 1 });
    }
    // r = (b - √(b² - 4t²w)) / (2tw), b = 1 - t·e·u.
    let b = Series::one(n + 1).sub(&u.scale_i64(rk.e).shift(1));
    let w = eval_int_poly(&rk.w, u);
    let disc = b.mul(&b).sub(&w.scale_i64(4).shift(2));
    let num = b.sub(&disc.sqrt_one()?).unshift(1)?;
    let r = num.divide_exact(&w.scale_i64(2))?;
    Ok(u.mul(&r).truncate(n))
}

/// `Y_+(x)`, the root of the kernel in `y` that vanishes at `t = 0`.
/// The result is known to the order of `x` and has valuation ≥ `val(x) + 1`.
pub fn y_plus<C: Coefficient>(model: ModelId, x: &Series<C>) -> Result<Series<C>> {
    small_root(&ReducedKernel::new(model, Side::Y), x)
}

/// `X_+(y)`, the small root of the kernel in `x`.
pub fn x_plus<C: Coefficient>(model: ModelId, y: &Series<C>) -> Result<Series<C>> {
    small_root(&ReducedKernel::new(model, Side::X), y)
}

/// `t·Y_-(x)`, the large root scaled back into a power series, computed
/// as `t·(-a1/a2) - t·Y_+`.
pub fn y_minus_scaled<C: Coefficient>(model: ModelId, x: &Series<C>) -> Result<Series<C>> {
    let rk = ReducedKernel::new(model, Side::Y);
    let n = x.order();
    let b = Series::one(n).sub(&x.scale_i64(rk.e).shift(1));
    let w = eval_int_poly(&rk.w, x);
    let lead = x.mul(&b).divide_exact(&w)?;
    Ok(lead.sub(&y_plus(model, x)?.shift(1)).truncate(n))
}

/// `Y_0(1), …, Y_{n_max}(1)` mod `t^order`.
pub fn iterate_symmetric<C: Coefficient>(model: ModelId, n_max: usize, order: usize) -> Result<IterateFamily<C>> {
    let mut items = vec![Series::one(order)];
    for k in 0..n_max {
        items.push(y_plus(model, &items[k])?);
    }
    Ok(IterateFamily {
        model,
        kind: IterateKind::Y,
        items,
    })
}

fn require_symmetric(model: ModelId, operation: &'static str) -> Result<()> {
    if model.is_symmetric() {
        Ok(())
    } else {
        Err(Error::UnsupportedModel { model, operation })
    }
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 {
        Err(Error::InsufficientOrder { have: 0, need: 1 })
    } else {
        Ok(())
    }
}

/// Iterates needed for the symmetric sum mod `t^order`.
pub fn symmetric_terms(order: usize) -> usize {
    order.div_ceil(2) + 1
}

/// Iterates needed for the asymmetric sums mod `t^order`.
pub fn asymmetric_terms(order: usize) -> usize {
    order.div_ceil(4) + 1
}

/// `Σ_{n<terms} (-1)^n Y_n(1)·Y_{n+1}(1)` mod `t^order`.
pub fn alternating_sum<C: Coefficient>(model: ModelId, order: usize, terms: usize) -> Result<Series<C>> {
    let fam = iterate_symmetric::<C>(model, terms, order)?;
    let mut acc = Series::zero(order);
    for n in 0..terms {
        let p = fam.items[n].mul(&fam.items[n + 1]).truncate(order);
        acc = if n % 2 == 0 { acc.add(&p) } else { acc.sub(&p) };
    }
    Ok(acc)
}

/// `S_{0,1}(t)` mod `t^order`: walks ending on the y-axis.
pub fn gf_axis_symmetric<C: Coefficient>(model: ModelId, order: usize) -> Result<Series<C>> {
    require_symmetric(model, "gf_axis_symmetric")?;
    check_order(order)?;
    alternating_sum::<C>(model, order + 1, symmetric_terms(order + 1))?.unshift(1)
}

/// `(1 - boundary) / (1 - |S|t)` mod `t^order`.
pub fn assemble_total<C: Coefficient>(model: ModelId, boundary: &Series<C>, order: usize) -> Result<Series<C>> {
    let num = Series::one(order).sub(boundary);
    let den = Series::from_i64s(&[1, -(model.cardinality() as i64)], order);
    Ok(num.mul(&den.reciprocal()?).truncate(order))
}

/// `S(t)` mod `t^order` for a symmetric model.
pub fn gf_total_symmetric<C: Coefficient>(model: ModelId, order: usize) -> Result<Series<C>> {
    gf_total_symmetric_terms(model, order, symmetric_terms(order))
}

/// As [`gf_total_symmetric`] with an explicit number of telescoping terms.
pub fn gf_total_symmetric_terms<C: Coefficient>(model: ModelId, order: usize, terms: usize) -> Result<Series<C>> {
    require_symmetric(model, "gf_total_symmetric")?;
    check_order(order)?;
    let sum = alternating_sum::<C>(model, order, terms)?;
    assemble_total(model, &sum.scale_i64(2), order)
}

/// `χ_n`, `Υ_n`, `Y_+∘χ_n` and `X_+∘Υ_n` at 1 for `n ≤ n_max`.
pub fn iterate_asymmetric<C: Coefficient>(model: ModelId, n_max: usize, order: usize) -> Result<AsymmetricIterates<C>> {
    let family = |kind, items| IterateFamily { model, kind, items };
    let mut chi = vec![Series::one(order)];
    let mut ychi = Vec::new();
    let mut ups = vec![Series::one(order)];
    let mut xups = Vec::new();
    for k in 0..=n_max {
        ychi.push(y_plus(model, &chi[k])?);
        xups.push(x_plus(model, &ups[k])?);
        if k < n_max {
            chi.push(x_plus(model, &ychi[k])?);
            ups.push(y_plus(model, &xups[k])?);
        }
    }
    Ok(AsymmetricIterates {
        chi: family(IterateKind::Chi, chi),
        upsilon: family(IterateKind::Upsilon, ups),
        y_plus_of_chi: family(IterateKind::YPlusOfChi, ychi),
        x_plus_of_upsilon: family(IterateKind::XPlusOfUpsilon, xups),
    })
}

/// `S(t)` mod `t^order` through the two alternating chains. Works for the
/// symmetric models too, where it reduces to [`gf_total_symmetric`].
pub fn gf_total_asymmetric<C: Coefficient>(model: ModelId, order: usize) -> Result<Series<C>> {
    gf_total_asymmetric_terms(model, order, asymmetric_terms(order))
}

/// As [`gf_total_asymmetric`] with an explicit number of terms per sum.
pub fn gf_total_asymmetric_terms<C: Coefficient>(model: ModelId, order: usize, terms: usize) -> Result<Series<C>> {
    check_order(order)?;
    let it = iterate_asymmetric::<C>(model, terms, order)?;
    let mut boundary = Series::zero(order);
    for k in 0..terms {
        let (x0, x1, y) = (&it.chi.items[k], &it.chi.items[k + 1], &it.y_plus_of_chi.items[k]);
        boundary = boundary.add(&x0.sub(x1).mul(y).truncate(order));
        let (u0, u1, v) = (
            &it.upsilon.items[k],
            &it.upsilon.items[k + 1],
            &it.x_plus_of_upsilon.items[k],
        );
        boundary = boundary.add(&v.mul(&u0.sub(u1)).truncate(order));
    }
    assemble_total(model, &boundary, order)
}

/// `S(t)` mod `t^order` for any model, picking the matching formula.
pub fn gf_total<C: Coefficient>(model: ModelId, order: usize) -> Result<Series<C>> {
    if model.is_symmetric() {
        gf_total_symmetric(model, order)
    } else {
        gf_total_asymmetric(model, order)
    }
}
