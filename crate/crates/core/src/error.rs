use thiserror::Error;

/// Errors raised by frame, measurement, entropy, bound and witness operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid frame parameters (d = {d}, n = {n}): {reason}")]
    InvalidParameters { d: usize, n: usize, reason: &'static str },

    #[error("{name} = {value} is outside {range}")]
    OutOfRange { name: &'static str, value: f64, range: &'static str },

    #[error("rows are not orthonormal (residual {residual:e})")]
    NotOrthonormal { residual: f64 },

    #[error("not a density matrix: {0}")]
    InvalidDensity(String),

    #[error("not a valid equiangular tight frame: {0}")]
    InvalidFrame(String),

    #[error("not a probability distribution: {0}")]
    InvalidDistribution(String),

    #[error("frame search did not converge after {restarts} restarts (best residual {best_residual:e})")]
    NotConverged { best_residual: f64, restarts: usize },

    #[error("{0}")]
    Invalid(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
