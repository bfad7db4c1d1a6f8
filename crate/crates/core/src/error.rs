use thiserror::Error;

/// Errors raised by covariance-matrix algebra and the correlation measures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is {rows}x{cols}, expected a square matrix of even dimension")]
    Dimension { rows: usize, cols: usize },

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("covariance matrix violates the uncertainty relation (nu_min = {0})")]
    Unphysical(f64),

    #[error("expected {expected} modes, got {actual}")]
    ModeCount { expected: usize, actual: usize },

    #[error("invalid partition: {0}")]
    Partition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("state is not pure (det = {0})")]
    NotPure(f64),

    #[error("outside the domain of the closed formula: {0}")]
    Domain(String),

    #[error("numerical breakdown: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
