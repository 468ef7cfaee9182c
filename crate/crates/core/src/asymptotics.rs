//! Growth constants `κ` in `S_n ~ κ·|S|^n`.
//!
//! For the symmetric models `κ = 1 - 2Σ(-1)^n Y_n(1)Y_{n+1}(1)` at
//! `t = 1/|S|`, an alternating series with decreasing terms, so the
//! truncation error is bounded by the first omitted term. Model E uses the
//! asymmetric boundary sum at `t = 1/4` through the `q`-plane closed forms.
//! Model D only gets an extrapolated estimate from exact counts.

use rug::ops::Pow;
use rug::{Float, Integer};

use crate::error::{Error, Result};
use crate::fast_enum;
use crate::models::{Branch, ModelId, ReducedKernel, Side};
use crate::numeric::{BigComplex, BigFloat};
use crate::series::TruncatedSeries;
use crate::singularities::closed_form::{closed_form_asymmetric, AsymFamily};

#[derive(Clone, Debug)]
pub struct KappaResult {
    pub model: ModelId,
    pub estimate: BigFloat,
    /// Bound on `|κ - estimate|`: rigorous for the symmetric models, an
    /// extrapolated tail for model E.
    pub tail_bound: BigFloat,
    /// `[lo, hi]` when the result is reported as an interval.
    pub interval: Option<(BigFloat, BigFloat)>,
    pub terms_used: usize,
    /// `|S|`.
    pub growth_base: u32,
    /// `p_0 + 2√(p_1·p_{-1})`.
    pub subdominant_base: BigFloat,
    pub precision_bits: u32,
    /// Whether `tail_bound` is a proven bound.
    pub rigorous: bool,
}

fn base_result(model: ModelId, prec: u32) -> (u32, BigFloat) {
    let inv = model.inventory();
    (inv.total(), inv.subdominant_base(prec))
}

/// `κ` for model A, B or C from `terms + 1` terms of the alternating sum.
/// Retries once at doubled precision if the terms fail to decrease.
pub fn kappa_symmetric(model: ModelId, terms: usize, precision_bits: u32) -> Result<KappaResult> {
    if !model.is_symmetric() {
        return Err(Error::UnsupportedModel {
            model,
            operation: "kappa_symmetric",
        });
    }
    if terms < 2 {
        return Err(Error::InvalidArgument("kappa needs at least 2 terms".into()));
    }
    match kappa_symmetric_at(model, terms, precision_bits) {
        Err(Error::AlternatingBoundViolated { .. }) => kappa_symmetric_at(model, terms, 2 * precision_bits),
        other => other,
    }
}

fn kappa_symmetric_at(model: ModelId, terms: usize, prec: u32) -> Result<KappaResult> {
    let (growth, sub) = base_result(model, prec);
    let kernel = ReducedKernel::new(model, Side::Y);
    let t = Float::with_val(prec, 1) / growth;
    // Y_0 .. Y_{terms+2}
    let mut ys = vec![Float::with_val(prec, 1)];
    for _ in 0..terms + 2 {
        let y = ys.last().expect("nonempty");
        let r = kernel.small_root_real(y, &t);
        ys.push(Float::with_val(prec, y * &r));
    }
    let prods: Vec<BigFloat> = ys.windows(2).map(|w| Float::with_val(prec, &w[0] * &w[1])).collect();
    for (i, w) in prods.windows(2).enumerate() {
        if w[1] <= 0 || w[1] >= w[0] {
            return Err(Error::AlternatingBoundViolated { index: i + 1 });
        }
    }
    let mut sum = Float::new(prec);
    for (n, p) in prods.iter().take(terms + 1).enumerate() {
        if n % 2 == 0 {
            sum += p;
        } else {
            sum -= p;
        }
    }
    let estimate = Float::with_val(prec, 1) - sum * 2u32;
    let tail_bound = Float::with_val(prec, &prods[terms + 1] * 2u32);
    Ok(KappaResult {
        model,
        estimate,
        tail_bound,
        interval: None,
        terms_used: terms + 1,
        growth_base: growth,
        subdominant_base: sub,
        precision_bits: prec,
        rigorous: true,
    })
}

/// `H(t) = ((1 - q_0t) - √((1 - q_0t)² - 4q_1q_{-1}t²)) / (2q_1q_{-1}t²)`
/// mod `t^order`: walks in the upper half plane that end on the x-axis.
pub fn half_plane_gf(model: ModelId, order: usize) -> Result<TruncatedSeries<Integer>> {
    if order == 0 {
        return Err(Error::InsufficientOrder { have: 0, need: 1 });
    }
    let inv = model.inventory();
    let (q0, qq) = (inv.q_0 as i64, (inv.q_1 * inv.q_minus1) as i64);
    let m = order + 2;
    let lin = TruncatedSeries::<rug::Rational>::from_i64s(&[1, -q0], m);
    let disc = lin.mul(&lin).sub(&TruncatedSeries::monomial(4 * qq, 2, m));
    let num = lin.sub(&disc.sqrt_one()?);
    let h = num.unshift(2)?.scale(&rug::Rational::from((1, 2 * qq)));
    h.truncate(order).to_integer()
}

/// `κ_E = 1 - Σ_k [(χ_k - χ_{k+1})·Y_+(χ_k) + X_+(Υ_k)·(Υ_k - Υ_{k+1})]`
/// at `t = 1/4`, i.e. `q = 2 - √3`, from `terms` terms. All terms are
/// positive, so partial sums decrease to `κ_E`; the lower end of the
/// interval extrapolates the tail geometrically.
pub fn kappa_e(terms: usize, precision_bits: u32) -> Result<KappaResult> {
    if terms < 2 {
        return Err(Error::InvalidArgument("kappa needs at least 2 terms".into()));
    }
    let prec = precision_bits;
    let model = ModelId::E;
    let (growth, sub) = base_result(model, prec);
    let q = BigComplex::from_real(&(Float::with_val(prec, 2) - Float::with_val(prec, 3).sqrt()));
    let value = |f: AsymFamily, k: usize| -> Result<BigFloat> {
        Ok(closed_form_asymmetric(model, f, k, &q, Branch::Plus)?.recip().re)
    };
    let mut chi = value(AsymFamily::Chi, 0)?;
    let mut ups = value(AsymFamily::Upsilon, 0)?;
    let mut sum = Float::new(prec);
    let mut last = Float::new(prec);
    let mut prev = Float::new(prec);
    for k in 0..terms {
        let chi_next = value(AsymFamily::Chi, k + 1)?;
        let ups_next = value(AsymFamily::Upsilon, k + 1)?;
        let term = Float::with_val(prec, &chi - &chi_next) * value(AsymFamily::YChi, k)?
            + value(AsymFamily::XUpsilon, k)? * Float::with_val(prec, &ups - &ups_next);
        if term <= 0 {
            return Err(Error::AlternatingBoundViolated { index: k });
        }
        sum += &term;
        prev = std::mem::replace(&mut last, term);
        chi = chi_next;
        ups = ups_next;
    }
    let hi = Float::with_val(prec, 1) - &sum;
    let q4 = Float::with_val(prec, q.re.clone().pow(4u32));
    let observed = Float::with_val(prec, &last / &prev);
    let rho = if observed > q4 { observed } else { q4 };
    if rho >= 1 {
        return Err(Error::AlternatingBoundViolated { index: terms });
    }
    let tail = Float::with_val(prec, &last * &rho) / (Float::with_val(prec, 1) - &rho);
    let lo = Float::with_val(prec, &hi - &tail);
    let lo_env = Float::with_val(prec, 122) / 525u32;
    let hi_env = Float::with_val(prec, 7) / 10u32;
    if lo < lo_env || hi > hi_env {
        return Err(Error::EConstantCheck {
            lo: lo.to_f64(),
            hi: hi.to_f64(),
        });
    }
    let estimate = Float::with_val(prec, &lo + &hi) / 2u32;
    let tail_bound = Float::with_val(prec, &hi - &lo) / 2u32;
    Ok(KappaResult {
        model,
        estimate,
        tail_bound,
        interval: Some((lo, hi)),
        terms_used: terms,
        growth_base: growth,
        subdominant_base: sub,
        precision_bits: prec,
        rigorous: false,
    })
}

/// `κ` for any model with a computable constant; model D is refused.
pub fn kappa(model: ModelId, terms: usize, precision_bits: u32) -> Result<KappaResult> {
    match model {
        ModelId::E => kappa_e(terms, precision_bits),
        ModelId::D => Err(Error::UnsupportedModel {
            model,
            operation: "kappa (only an empirical estimate exists for D)",
        }),
        _ => kappa_symmetric(model, terms, precision_bits),
    }
}

/// Empirical `κ_D` with `D_n ~ κ_D·3^n/√n`.
#[derive(Clone, Debug)]
pub struct EmpiricalKappa {
    pub estimate: f64,
    /// `D_N·√N/3^N` without extrapolation.
    pub raw: f64,
    /// `(n, D_n·√n/3^n)` at the sample points used.
    pub samples: Vec<(usize, f64)>,
}

fn scaled_d(count: &Integer, n: usize) -> f64 {
    let prec = 128;
    let three = Float::with_val(prec, 3).pow(n as u32);
    let v = Float::with_val(prec, count) / three * Float::with_val(prec, n).sqrt();
    v.to_f64()
}

/// Richardson extrapolation of `D_n·√n/3^n` over `n = N/4, N/2, N`,
/// assuming corrections in powers of `1/n`. Not a bound.
pub fn kappa_d_empirical(n: usize) -> Result<EmpiricalKappa> {
    if n < 8 {
        return Err(Error::InvalidArgument("kappa_D needs N ≥ 8".into()));
    }
    let counts = fast_enum::enumerate(ModelId::D, n + 1, fast_enum::Method::Fast)?;
    let pts = [n / 4, n / 2, n];
    let a: Vec<f64> = pts.iter().map(|&k| scaled_d(&counts[k], k)).collect();
    let r1 = |x: f64, y: f64| 2.0 * y - x;
    let first = [r1(a[0], a[1]), r1(a[1], a[2])];
    let estimate = (4.0 * first[1] - first[0]) / 3.0;
    Ok(EmpiricalKappa {
        estimate,
        raw: a[2],
        samples: pts.iter().copied().zip(a.iter().copied()).collect(),
    })
}

/// `D_n·√n/3^n` for `1 ≤ n ≤ N`.
pub fn scaled_d_sequence(n: usize) -> Result<Vec<f64>> {
    let counts = fast_enum::enumerate(ModelId::D, n + 1, fast_enum::Method::Fast)?;
    Ok((1..=n).map(|k| scaled_d(&counts[k], k)).collect())
}

/// `κ·|S|^n`.
pub fn predict(model: ModelId, n: usize, kappa: &KappaResult) -> BigFloat {
    let prec = kappa.estimate.prec();
    let base = Float::with_val(prec, model.cardinality() as u32).pow(n as u32);
    Float::with_val(prec, &kappa.estimate * &base)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_constants() {
        for (m, want) in [
            (ModelId::A, 0.17317888355),
            (ModelId::B, 0.15194581080),
            (ModelId::C, 0.38220125855),
        ] {
            let k = kappa_symmetric(m, 40, 128).unwrap();
            assert!((k.estimate.to_f64() - want).abs() < 1e-10, "{m}: {}", k.estimate);
            assert!(k.tail_bound > 0 && k.tail_bound < 1e-8);
            assert!(k.subdominant_base < k.growth_base);
        }
    }

    #[test]
    fn e_constant_interval() {
        let k = kappa_e(20, 192).unwrap();
        let (lo, hi) = k.interval.clone().unwrap();
        assert!(lo <= hi);
        assert!((k.estimate.to_f64() - 0.26359665328).abs() < 1e-10, "{}", k.estimate);
    }

    #[test]
    fn half_plane_a() {
        let h = half_plane_gf(ModelId::A, 5).unwrap();
        let c: Vec<i64> = h.coeffs().iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(c, vec![1, 0, 2, 0, 8]);
    }

    #[test]
    fn predict_at_zero_is_kappa() {
        let k = kappa_symmetric(ModelId::C, 10, 64).unwrap();
        assert_eq!(predict(ModelId::C, 0, &k), k.estimate);
    }

    #[test]
    fn d_refused_by_generic_kappa() {
        assert!(kappa(ModelId::D, 10, 64).is_err());
    }
}
