//! Error type shared by every module of the crate.

use thiserror::Error;

/// Failures reported by the numerical kernels.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Input violates a documented validity condition.
    #[error("validation error: {0}")]
    Validation(String),

    /// Input lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A stated precondition does not hold for the input.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Cochain degree outside the admissible range.
    #[error("degree error: {0}")]
    Degree(String),

    /// Iterative solver or factorization failed.
    #[error("numerical failure: {0}")]
    Numerical(String),
}

/// Convenience alias.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for failures of iterative solvers or factorizations.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Numerical(_))
    }
}
