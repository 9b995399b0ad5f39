//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An operation received an input outside its domain (zero polynomial,
    /// both-zero gcd, and the like).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A documented precondition was violated by the caller.
    #[error("contract violation: {0}")]
    ContractViolation(String),

    /// A recurrence pair failed validation (non-coprime, zero Q2, constant Q1,
    /// or wrong recurrence order for a criterion operation).
    #[error("validation error: {0}")]
    Validation(String),

    /// Polynomial expression syntax error, with a byte offset into the source.
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    /// A required numeric step failed to converge.
    #[error("numeric non-convergence: {0}")]
    NonConvergence(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI: 2 parse, 3 validation, 4 non-convergence,
    /// 1 anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::Validation(_) => 3,
            Error::NonConvergence(_) => 4,
            _ => 1,
        }
    }
}
