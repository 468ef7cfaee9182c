use std::fmt::Write as _;
use std::io::Write as _;

use qkernel::asymptotics::{self, KappaResult};
use qkernel::fast_enum::{self, Method};
use qkernel::naive;
use qkernel::singularities::export::{format_sig17, to_csv, to_svg};
use qkernel::singularities::{classify_pole, singularity_roots, RootSet};
use qkernel::{ModelId, DEFAULT_PRECISION_BITS, DEFAULT_ROOT_PRECISION_BITS};
use rug::ops::Pow;
use rug::Integer;
use serde_json::{json, Value};

use crate::format::{fixed, sci};
use crate::{BenchArgs, Command, Common, EnumerateArgs, Format, KappaArgs, SingularitiesArgs, VerifyArgs};

pub const SCHEMA_VERSION: u32 = 1;
const PRECISION_ENV: &str = "QKERNEL_PRECISION_BITS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] qkernel::Error),
    #[error("{0}")]
    Io(String),
}

type Outcome = Result<bool, CliError>;

pub fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Enumerate(a) => enumerate(a),
        Command::Kappa(a) => kappa(a),
        Command::Singularities(a) => singularities(a),
        Command::Verify(a) => verify(a),
        Command::Bench(a) => bench(a),
    }
}

fn env_precision() -> Result<Option<u32>, CliError> {
    match std::env::var(PRECISION_ENV) {
        Ok(v) => v
            .trim()
            .parse::<u32>()
            .ok()
            .filter(|p| *p >= 16)
            .map(Some)
            .ok_or_else(|| CliError::Usage(format!("{PRECISION_ENV}={v:?} is not a precision in bits (>= 16)"))),
        Err(_) => Ok(None),
    }
}

fn reject_format(common: &Common, allowed: &[Format]) -> Result<(), CliError> {
    if allowed.contains(&common.format) {
        Ok(())
    } else {
        Err(CliError::Usage(
            format!("--format {:?} is not available here", common.format).to_lowercase(),
        ))
    }
}

fn emit(common: &Common, body: &str) -> Result<(), CliError> {
    match &common.output {
        Some(path) => std::fs::write(path, body).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

fn json_body(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json");
    s.push('\n');
    s
}

fn strings(v: &[Integer]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn enumerate(a: EnumerateArgs) -> Outcome {
    reject_format(&a.common, &[Format::Text, Format::Json, Format::Csv])?;
    let mut ok = true;
    let mut rows = Vec::new();
    for &m in &a.common.model.0 {
        let seq = fast_enum::enumerate(m, a.terms, a.method)?;
        if a.seed_check {
            let k = a.terms.min(30);
            if k > 0 && naive::count_all(m, k - 1)[..] != seq[..k] {
                eprintln!(
                    "seed check failed for model {m}: {} disagrees with naive",
                    a.method.name()
                );
                ok = false;
            }
        }
        rows.push((m, seq));
    }
    let body = match a.common.format {
        Format::Json => json_body(json!({
            "schema_version": SCHEMA_VERSION,
            "command": "enumerate",
            "method": a.method.name(),
            "terms": a.terms,
            "results": rows.iter().map(|(m, s)| json!({
                "model": m.name(),
                "oeis": m.oeis_tag(),
                "counts": strings(s),
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("model,n,count\n");
            for (m, seq) in &rows {
                for (n, c) in seq.iter().enumerate() {
                    let _ = writeln!(s, "{m},{n},{c}");
                }
            }
            s
        }
        _ => {
            let mut s = String::new();
            for (m, seq) in &rows {
                let _ = writeln!(s, "{m}: {}", strings(seq).join(", "));
            }
            s
        }
    };
    emit(&a.common, &body)?;
    Ok(ok)
}

enum KappaRow {
    Exact(KappaResult),
    Empirical {
        model: ModelId,
        n: usize,
        est: asymptotics::EmpiricalKappa,
    },
}

fn kappa_for(m: ModelId, digits: usize, terms: Option<usize>, prec: u32) -> Result<KappaResult, CliError> {
    let target = rug::Float::with_val(prec, 10).pow(-(digits as i32) - 1);
    let compute = |t: usize| asymptotics::kappa(m, t, prec);
    if let Some(t) = terms {
        return Ok(compute(t)?);
    }
    let mut t = 8;
    loop {
        let k = compute(t)?;
        if k.tail_bound < target || t >= 1 << 14 {
            return Ok(k);
        }
        t *= 2;
    }
}

fn kappa(a: KappaArgs) -> Outcome {
    reject_format(&a.common, &[Format::Text, Format::Json, Format::Csv])?;
    let digit_bits = (a.digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 64;
    let prec = match a.precision {
        Some(p) => p,
        None => env_precision()?.unwrap_or(DEFAULT_PRECISION_BITS.max(digit_bits)),
    };
    let mut rows = Vec::new();
    for &m in &a.common.model.0 {
        if m == ModelId::D {
            let n = a.terms.unwrap_or(500);
            rows.push(KappaRow::Empirical {
                model: m,
                n,
                est: asymptotics::kappa_d_empirical(n)?,
            });
        } else {
            rows.push(KappaRow::Exact(kappa_for(m, a.digits, a.terms, prec)?));
        }
    }
    let d = a.digits;
    let body = match a.common.format {
        Format::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|r| match r {
                    KappaRow::Exact(k) => json!({
                        "model": k.model.name(),
                        "estimate": fixed(&k.estimate, d),
                        "tail_bound": sci(&k.tail_bound),
                        "interval": k.interval.as_ref().map(|(lo, hi)| vec![fixed(lo, d), fixed(hi, d)]),
                        "terms_used": k.terms_used,
                        "growth_base": k.growth_base,
                        "subdominant_base": fixed(&k.subdominant_base, d),
                        "precision_bits": k.precision_bits,
                        "rigorous": k.rigorous,
                    }),
                    KappaRow::Empirical { model, n, est } => json!({
                        "model": model.name(),
                        "estimate": format!("{:.6}", est.estimate),
                        "raw": format!("{:.6}", est.raw),
                        "terms_used": n,
                        "growth_base": model.cardinality(),
                        "rigorous": false,
                    }),
                })
                .collect();
            json_body(json!({
                "schema_version": SCHEMA_VERSION,
                "command": "kappa",
                "digits": d,
                "results": items,
            }))
        }
        Format::Csv => {
            let mut s = String::from("model,estimate,tail_bound,lo,hi,terms,precision_bits,rigorous\n");
            for r in &rows {
                match r {
                    KappaRow::Exact(k) => {
                        let (lo, hi) = k
                            .interval
                            .as_ref()
                            .map(|(lo, hi)| (fixed(lo, d), fixed(hi, d)))
                            .unwrap_or_default();
                        let _ = writeln!(
                            s,
                            "{},{},{},{lo},{hi},{},{},{}",
                            k.model,
                            fixed(&k.estimate, d),
                            sci(&k.tail_bound),
                            k.terms_used,
                            k.precision_bits,
                            k.rigorous
                        );
                    }
                    KappaRow::Empirical { model, n, est } => {
                        let _ = writeln!(s, "{model},{:.6},,,,{n},,false", est.estimate);
                    }
                }
            }
            s
        }
        _ => {
            let mut s = String::new();
            for r in &rows {
                match r {
                    KappaRow::Exact(k) => {
                        let _ = write!(
                            s,
                            "{}  kappa = {}  tail_bound = {}",
                            k.model,
                            fixed(&k.estimate, d),
                            sci(&k.tail_bound)
                        );
                        if let Some((lo, hi)) = &k.interval {
                            let _ = write!(s, "  interval = [{}, {}]", fixed(lo, d), fixed(hi, d));
                        }
                        let _ = writeln!(
                            s,
                            "  terms = {}  precision = {} bits{}",
                            k.terms_used,
                            k.precision_bits,
                            if k.rigorous { "" } else { "  (tail extrapolated)" }
                        );
                    }
                    KappaRow::Empirical { model, n, est } => {
                        let _ = writeln!(
                            s,
                            "{model}  kappa ~ {:.6}  (empirical, N = {n}, D_N sqrt(N)/3^N = {:.6})",
                            est.estimate, est.raw
                        );
                    }
                }
            }
            s
        }
    };
    emit(&a.common, &body)?;
    Ok(true)
}

fn singularities(a: SingularitiesArgs) -> Outcome {
    let prec = match a.precision {
        Some(p) => p,
        None => env_precision()?.unwrap_or(DEFAULT_ROOT_PRECISION_BITS),
    };
    let (lo, hi) = a.n;
    let mut sets: Vec<RootSet> = Vec::new();
    for &m in &a.common.model.0 {
        for n in lo..=hi {
            for mut rs in singularity_roots(m, n, prec)? {
                if !a.all_roots {
                    let mut keep = Vec::new();
                    for r in rs.nontrivial() {
                        if classify_pole(m, rs.family, n, &r.value)?.is_pole() {
                            keep.push(r.clone());
                        }
                    }
                    rs.roots = keep;
                }
                sets.push(rs.with_plane(a.plane));
            }
        }
    }
    let body = match a.common.format {
        Format::Csv => to_csv(&sets),
        Format::Svg => to_svg(&sets),
        Format::Json => json_body(json!({
            "schema_version": SCHEMA_VERSION,
            "command": "singularities",
            "plane": a.plane.label(),
            "poles_only": !a.all_roots,
            "precision_bits": prec,
            "sets": sets.iter().map(|rs| json!({
                "model": rs.model.map(|m| m.name()),
                "n": rs.n,
                "family": rs.family.to_string(),
                "points": rs.roots.iter().map(|r| {
                    let (re, im) = r.value.to_f64();
                    json!({"re": format_sig17(re), "im": format_sig17(im), "multiplicity": r.multiplicity})
                }).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut s = String::new();
            for rs in &sets {
                let spread = rs
                    .roots
                    .iter()
                    .map(|r| r.value.to_c64().norm())
                    .fold((f64::INFINITY, 0.0_f64), |(a, b), x| (a.min(x), b.max(x)));
                let _ = writeln!(
                    s,
                    "{} n={} {}: {} points, |{}| in [{:.6}, {:.6}]",
                    rs.model.map_or("-", |m| m.name()),
                    rs.n,
                    rs.family,
                    rs.roots.len(),
                    rs.plane.label(),
                    if rs.roots.is_empty() { 0.0 } else { spread.0 },
                    spread.1
                );
            }
            s
        }
    };
    emit(&a.common, &body)?;
    Ok(true)
}

struct Check {
    model: ModelId,
    name: String,
    passed: bool,
}

fn verify(a: VerifyArgs) -> Outcome {
    reject_format(&a.common, &[Format::Text, Format::Json])?;
    if a.terms == 0 {
        return Err(CliError::Usage("--terms must be positive".into()));
    }
    let mut checks = Vec::new();
    for &m in &a.common.model.0 {
        let naive = fast_enum::enumerate(m, a.terms, Method::Naive)?;
        let iter = fast_enum::enumerate(m, a.terms, Method::Iterated)?;
        let fast = fast_enum::enumerate(m, a.terms, Method::Fast)?;
        checks.push(Check {
            model: m,
            name: format!("naive = iterated = fast for N = {}", a.terms),
            passed: naive == iter && iter == fast,
        });
        let k = a.terms.min(11);
        let oeis: Vec<Integer> = m.oeis_terms()[..k].iter().map(|&x| Integer::from(x)).collect();
        checks.push(Check {
            model: m,
            name: format!("first {k} terms match {}", m.oeis_tag()),
            passed: [&naive, &iter, &fast].iter().all(|s| s[..k] == oeis[..]),
        });
    }
    let all = checks.iter().all(|c| c.passed);
    let body = match a.common.format {
        Format::Json => json_body(json!({
            "schema_version": SCHEMA_VERSION,
            "command": "verify",
            "terms": a.terms,
            "passed": all,
            "checks": checks.iter().map(|c| json!({
                "model": c.model.name(),
                "check": c.name,
                "passed": c.passed,
            })).collect::<Vec<_>>(),
        })),
        _ => {
            let mut s = String::new();
            for c in &checks {
                let _ = writeln!(s, "{}  {}: {}", c.model, c.name, if c.passed { "PASS" } else { "FAIL" });
            }
            let passed = checks.iter().filter(|c| c.passed).count();
            let _ = writeln!(s, "{passed}/{} checks passed", checks.len());
            s
        }
    };
    emit(&a.common, &body)?;
    Ok(all)
}

fn bench(a: BenchArgs) -> Outcome {
    reject_format(&a.common, &[Format::Text, Format::Json, Format::Csv])?;
    let mut rows = Vec::new();
    for &m in &a.common.model.0 {
        rows.extend(fast_enum::benchmark(m, &a.n.0, &a.method.0)?);
    }
    let slopes: Vec<(ModelId, Method, Option<f64>)> = a
        .common
        .model
        .0
        .iter()
        .flat_map(|&m| {
            let mine: Vec<_> = rows.iter().filter(|r| r.model == m).cloned().collect();
            a.method
                .0
                .iter()
                .map(move |&me| (m, me, fast_enum::loglog_slope(&mine, me)))
                .collect::<Vec<_>>()
        })
        .collect();
    let body = match a.common.format {
        Format::Json => json_body(json!({
            "schema_version": SCHEMA_VERSION,
            "command": "bench",
            "rows": rows.iter().map(|r| json!({
                "model": r.model.name(),
                "n": r.n,
                "method": r.method.name(),
                "seconds": r.seconds,
                "peak_rss_bytes": r.bytes,
            })).collect::<Vec<_>>(),
            "loglog_slopes": slopes.iter().map(|(m, me, s)| json!({
                "model": m.name(), "method": me.name(), "slope": s,
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("model,n,method,seconds,peak_rss_bytes\n");
            for r in &rows {
                let bytes = r.bytes.map(|b| b.to_string()).unwrap_or_default();
                let _ = writeln!(s, "{},{},{},{:.6},{bytes}", r.model, r.n, r.method.name(), r.seconds);
            }
            s
        }
        _ => {
            let mut s = format!(
                "{:<6}{:>8}  {:<10}{:>12}{:>16}\n",
                "model", "N", "method", "seconds", "peak_rss"
            );
            for r in &rows {
                let bytes = r.bytes.map(|b| b.to_string()).unwrap_or_else(|| "-".into());
                let _ = writeln!(
                    s,
                    "{:<6}{:>8}  {:<10}{:>12.6}{:>16}",
                    r.model.name(),
                    r.n,
                    r.method.name(),
                    r.seconds,
                    bytes
                );
            }
            for (m, me, sl) in &slopes {
                if let Some(sl) = sl {
                    let _ = writeln!(s, "{m} {} log-log slope: {sl:.2}", me.name());
                }
            }
            s
        }
    };
    emit(&a.common, &body)?;
    Ok(true)
}
