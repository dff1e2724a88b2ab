use alloc::string::String;

/// Errors raised by the recovery routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("matrix or vector contains a non-finite entry")]
    NonFinite,
    #[error("least squares diverged after {iters} iterations (residual grew from {initial:e} to {current:e})")]
    Divergence { iters: usize, initial: f64, current: f64 },
    #[error("matrix is singular or rank deficient")]
    RankDeficient,
    #[error("{count} supports exceed the enumeration cap of {cap}; use Monte-Carlo sampling")]
    EnumerationCap { count: u128, cap: u128 },
    #[error("measurements are not in the range of the matrix")]
    Infeasible,
    #[error("solver did not converge within {0} iterations")]
    MaxIterations(usize),
    #[error("row {0} is zero")]
    ZeroRow(usize),
    #[error("vector is zero")]
    ZeroVector,
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

pub(crate) fn invalid(msg: &str) -> Error {
    Error::InvalidParameter(String::from(msg))
}
