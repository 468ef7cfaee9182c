use thiserror::Error;

use crate::models::ModelId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-invertible series: constant term is zero")]
    NonInvertible,

    #[error("series square root needs constant term 1")]
    SqrtConstantTerm,

    #[error("non-series quotient: divisor valuation {divisor} exceeds dividend valuation {dividend}")]
    NonSeriesQuotient { dividend: usize, divisor: usize },

    #[error("insufficient order: have {have}, need at least {need}")]
    InsufficientOrder { have: usize, need: usize },

    #[error("coefficient {index} is not an integer")]
    NonIntegral { index: usize },

    #[error("model {model} is not supported by {operation}")]
    UnsupportedModel { model: ModelId, operation: &'static str },

    #[error("singular parameter: {0}")]
    SingularParameter(&'static str),

    #[error("alternating bound violated at term {index} (precision too low?)")]
    AlternatingBoundViolated { index: usize },

    #[error("E-constant check failed: [{lo}, {hi}] escapes the admissible bracket")]
    EConstantCheck { lo: f64, hi: f64 },

    #[error("root finder did not converge at {precision} bits; retry with higher precision")]
    NoConvergence { precision: u32 },

    #[error("no sign change on the bracket [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
