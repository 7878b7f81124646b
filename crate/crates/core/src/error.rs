use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An enumeration guard refused an input that would cost `2^n` (or worse).
    #[error("guard `{guard}` violated: n = {got} exceeds the limit of {limit}")]
    Guard {
        guard: &'static str,
        limit: usize,
        got: usize,
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid game: {0}")]
    InvalidGame(String),

    #[error("invalid coalition: {0}")]
    InvalidCoalition(String),

    #[error("covariance matrix is not positive semidefinite (tolerance {tolerance:e})")]
    NotPsd { tolerance: f64 },

    #[error("invalid covariance matrix: {0}")]
    InvalidCovariance(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Total variance is (numerically) zero, so normalized allocations are undefined.
    #[error("degenerate total variance {variance:e}")]
    DegenerateVariance { variance: f64 },

    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn guard(guard: &'static str, limit: usize, got: usize) -> Self {
        Error::Guard { guard, limit, got }
    }

    pub(crate) fn parse(path: impl Into<PathBuf>, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
