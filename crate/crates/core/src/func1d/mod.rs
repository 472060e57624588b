//! One-dimensional monotone functions on `[0, 1]`: increasing bijections and
//! their inverses, non-decreasing paths, step functions with their
//! distribution functions and non-increasing rearrangements, and quadrature.

mod map;
mod quad;
mod step;

use thiserror::Error;

pub use map::{bisect_inverse, MonotoneMap1D, MonotonePath};
pub use quad::{integrate, integrate_pieces, DEFAULT_TOL, MAX_DEPTH};
pub use step::{distribution_function, rearrangement, EmpiricalRV, Rearrangeable, Shape, StepFunction1D};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Func1dError {
    #[error("{0} lies outside [0, 1]")]
    OutOfDomain(f64),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("invalid step function: {0}")]
    InvalidStep(String),
    #[error("empirical variable needs at least one sample")]
    EmptySamples,
    #[error("sample {0} lies outside [0, 1]")]
    SampleOutOfRange(f64),
    #[error("quadrature on [{a}, {b}] did not reach tolerance {tol} (estimated error {error})")]
    ToleranceNotMet { a: f64, b: f64, tol: f64, error: f64 },
    #[error("integrand is not finite at {0}")]
    NonFinite(f64),
    #[error("invalid interval [{0}, {1}]")]
    InvalidInterval(f64, f64),
}

pub(crate) fn check_unit(x: f64) -> Result<f64, Func1dError> {
    if (0.0..=1.0).contains(&x) {
        Ok(x)
    } else {
        Err(Func1dError::OutOfDomain(x))
    }
}
