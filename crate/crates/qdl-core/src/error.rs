//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of an operation.
    #[error("domain error in {op}: {reason}")]
    Domain { op: &'static str, reason: String },

    /// Evaluation hit a pole. Carries the local Laurent data when known
    /// (for ζ at s = 1: residue 1, constant term γ).
    #[error("pole of {op} at {location}: residue {residue}, constant {constant}")]
    Pole {
        op: &'static str,
        location: String,
        residue: f64,
        constant: f64,
    },

    /// Requested accuracy could not be reached; carries the bound achieved.
    #[error("accuracy budget exceeded in {op}: requested {requested:e}, achieved {achieved:e}")]
    Accuracy {
        op: &'static str,
        requested: f64,
        achieved: f64,
    },

    /// Table or sieve would exceed the configured memory bound.
    #[error("resource bound exceeded in {op}: needs {required}, bound is {bound}")]
    Resource {
        op: &'static str,
        required: u64,
        bound: u64,
    },

    /// Invalid configuration (unknown kind tag, bad parameter).
    #[error("config error: {0}")]
    Config(String),

    /// Operation not supported for the given function family.
    #[error("unsupported in {op}: {reason}")]
    Unsupported { op: &'static str, reason: String },

    /// Too many incomplete zero sets for a statistically meaningful average.
    #[error("data quality: {0}")]
    DataQuality(String),

    /// Cache or report I/O failure.
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub fn domain(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            op,
            reason: reason.into(),
        }
    }

    pub fn config(reason: impl Into<String>) -> Self {
        Error::Config(reason.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
