use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qkernel::fast_enum::Method;
use qkernel::singularities::Plane;
use qkernel::ModelId;

mod commands;
mod format;

#[derive(Parser, Debug)]
#[command(
    name = "qkernel",
    version,
    about = "Counting and singularity analysis for the singular quarter-plane walk models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the counting sequence S_0 .. S_{N-1}.
    Enumerate(EnumerateArgs),
    /// Growth constant kappa in S_n ~ kappa |S|^n.
    Kappa(KappaArgs),
    /// Roots of the singularity polynomials, classified, as points.
    Singularities(SingularitiesArgs),
    /// Cross-check the three enumeration paths and the OEIS terms.
    Verify(VerifyArgs),
    /// Time the enumeration paths.
    Bench(BenchArgs),
}

/// A model letter or `all`.
#[derive(Clone, Debug)]
pub struct Models(pub Vec<ModelId>);

fn parse_models(s: &str) -> Result<Models, String> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(Models(ModelId::ALL.to_vec()));
    }
    s.parse::<ModelId>()
        .map(|m| Models(vec![m]))
        .map_err(|_| format!("unknown model {s:?} (expected A, B, C, D, E or all)"))
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: qkernel::Error| e.to_string())
}

fn parse_plane(s: &str) -> Result<Plane, String> {
    s.parse().map_err(|e: qkernel::Error| e.to_string())
}

/// `N` or an inclusive range `A..B`.
fn parse_n_range(s: &str) -> Result<(usize, usize), String> {
    let bad = || format!("expected N or A..B, got {s:?}");
    match s.split_once("..") {
        Some((a, b)) => {
            let a: usize = a.parse().map_err(|_| bad())?;
            let b: usize = b.trim_start_matches('=').parse().map_err(|_| bad())?;
            if a == 0 || a > b {
                return Err(bad());
            }
            Ok((a, b))
        }
        None => {
            let n: usize = s.parse().map_err(|_| bad())?;
            if n == 0 {
                return Err("n must be at least 1".into());
            }
            Ok((n, n))
        }
    }
}

fn parse_list<T>(s: &str, item: fn(&str) -> Result<T, String>) -> Result<Vec<T>, String> {
    s.split(',').map(|x| item(x.trim())).collect()
}

#[derive(Clone, Debug)]
pub struct Lengths(pub Vec<usize>);

#[derive(Clone, Debug)]
pub struct Methods(pub Vec<Method>);

fn parse_lengths(s: &str) -> Result<Lengths, String> {
    parse_list(s, |x| match x.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("not a positive length: {x:?}")),
    })
    .map(Lengths)
}

fn parse_methods(s: &str) -> Result<Methods, String> {
    parse_list(s, parse_method).map(Methods)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Svg,
}

#[derive(Args, Debug)]
pub struct Common {
    /// Model letter (A-E) or `all`.
    #[arg(long, short, value_parser = parse_models)]
    pub model: Models,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub common: Common,
    /// Number of terms.
    #[arg(long, short = 'N', default_value_t = 11)]
    pub terms: usize,
    #[arg(long, value_parser = parse_method, default_value = "fast")]
    pub method: Method,
    /// Re-run the naive counter on the first min(N, 30) terms.
    #[arg(long)]
    pub seed_check: bool,
}

#[derive(Args, Debug)]
pub struct KappaArgs {
    #[command(flatten)]
    pub common: Common,
    /// Decimal places to report.
    #[arg(long, default_value_t = 12)]
    pub digits: usize,
    /// Series terms; for model D the length N of the exact sequence.
    #[arg(long, short = 'N')]
    pub terms: Option<usize>,
    /// Working precision in bits (default: from digits, or QKERNEL_PRECISION_BITS).
    #[arg(long)]
    pub precision: Option<u32>,
}

#[derive(Args, Debug)]
pub struct SingularitiesArgs {
    #[command(flatten)]
    pub common: Common,
    /// Iterate index n, or an inclusive range A..B.
    #[arg(long, short, value_parser = parse_n_range, default_value = "20")]
    pub n: (usize, usize),
    #[arg(long, value_parser = parse_plane, default_value = "q")]
    pub plane: Plane,
    /// Keep every root, not only the poles of the iterates.
    #[arg(long)]
    pub all_roots: bool,
    /// Root-finding precision in bits (default 256, or QKERNEL_PRECISION_BITS).
    #[arg(long)]
    pub precision: Option<u32>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, short = 'N', default_value_t = 50)]
    pub terms: usize,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[command(flatten)]
    pub common: Common,
    /// Comma-separated lengths.
    #[arg(long, short, value_parser = parse_lengths, default_value = "25,50,100")]
    pub n: Lengths,
    /// Comma-separated methods.
    #[arg(long, value_parser = parse_methods, default_value = "naive,iterated,fast")]
    pub method: Methods,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(commands::CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
