use thiserror::Error;

/// Errors raised by the workbench. Every variant is a caller-side problem
/// (bad parameters, malformed input); theorem-check failures are reported
/// through experiment verdicts, never through this type.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parameter out of range: {0}")]
    Range(String),

    #[error("index {index} out of range for {what} (limit {limit})")]
    IndexOutOfRange {
        what: &'static str,
        index: u64,
        limit: u64,
    },

    #[error("uniformity mismatch: {0}")]
    Uniformity(String),

    #[error("modulus {0} is not a prime below 2^62")]
    NotPrime(u64),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("budget exceeded: {0}")]
    Budget(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn range_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Range(msg.into()))
}
