use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An index or degree outside the admissible range.
    #[error("range error: {0}")]
    Range(String),
    /// Operands that live on different spaces or in incompatible degrees.
    #[error("domain error: {0}")]
    Domain(String),
    /// An incidence profile whose expected dimension is negative or whose
    /// span condition fails.
    #[error("infeasible incidence profile (expected dimension {expected_dim}): {reason}")]
    Infeasible { expected_dim: i64, reason: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown {kind}: {name}")]
    Unknown { kind: &'static str, name: String },
    #[error("self-test failed: {0}")]
    SelfTest(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
