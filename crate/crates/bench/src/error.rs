use std::io;

use sparse_recovery::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl BenchError {
    pub fn exit_code(&self) -> i32 {
        match self {
            BenchError::Config(_) | BenchError::Io(_) => 2,
            BenchError::Numerical(_) => 3,
        }
    }
}

impl From<CoreError> for BenchError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InvalidParameter(_)
            | CoreError::DimensionMismatch { .. }
            | CoreError::IndexOutOfRange { .. }
            | CoreError::EnumerationCap { .. } => BenchError::Config(e.to_string()),
            other => BenchError::Numerical(other.to_string()),
        }
    }
}

impl From<csv::Error> for BenchError {
    fn from(e: csv::Error) -> Self {
        BenchError::Config(e.to_string())
    }
}

pub type BenchResult<T> = Result<T, BenchError>;

pub fn config_err(msg: impl Into<String>) -> BenchError {
    BenchError::Config(msg.into())
}
