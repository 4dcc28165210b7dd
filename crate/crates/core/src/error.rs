use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::special::NumericsError;

/// Errors raised by the evaluation routes, the spectral checks and the
/// Cauchy transform.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("parameter mismatch: {0}")]
    ParamMismatch(String),
    #[error("Cauchy closed form needs n >= 1; use the quadrature or monomial route for n = 0")]
    NZero,
    #[error("no convergence: {0}")]
    NonConvergent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
