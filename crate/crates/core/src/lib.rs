//! Exact enumeration and singularity analysis for the five singular
//! quarter-plane walk models.
//!
//! The crate is organised bottom-up:
//!
//! - [`models`]: step sets, inventory decompositions and kernel coefficients.
//! - [`series`]: dense truncated power series over exact rationals/integers.
//! - [`naive`]: brute-force dynamic programming over the quarter plane.
//! - [`kernel_iter`]: the iterated kernel method in the `t` variable.
//! - [`fast_enum`]: shift-add recurrences for normalized reciprocal iterates.
//! - [`asymptotics`]: growth constants with tail bounds.
//! - [`singularities`]: singularity polynomials in `q`, root finding, pole
//!   classification and point export.
//!
//! Everything that counts walks is exact. Floating work happens only in
//! [`asymptotics`] and [`singularities`], through [`numeric::BigComplex`]
//! and MPFR-backed [`numeric::BigFloat`].

pub mod asymptotics;
pub mod error;
pub mod fast_enum;
pub mod kernel_iter;
pub mod models;
pub mod naive;
pub mod numeric;
pub mod ring;
pub mod series;
pub mod singularities;

pub use error::{Error, Result};
pub use models::{InventoryCounts, ModelId, StepSet};
pub use numeric::{BigComplex, BigFloat};
pub use series::TruncatedSeries;

/// Default working precision (bits) for real and complex floating work.
pub const DEFAULT_PRECISION_BITS: u32 = 128;

/// Default precision used by the polynomial root finder.
pub const DEFAULT_ROOT_PRECISION_BITS: u32 = 256;
