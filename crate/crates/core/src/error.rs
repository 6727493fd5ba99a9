use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// An exponential search was refused because the instance is larger
    /// than the configured guard. `flag` names the CLI override.
    #[error("{what}: {actual} exceeds guard {limit} (override with {flag})")]
    GuardExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
        flag: &'static str,
    },

    #[error("precondition of {op} violated: {detail}")]
    Precondition { op: &'static str, detail: String },

    /// A checked postcondition failed. Never swallowed.
    #[error("contract violation ({label}): {detail}")]
    Contract { label: &'static str, detail: String },
}

impl Error {
    pub(crate) fn precondition(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Precondition {
            op,
            detail: detail.into(),
        }
    }

    pub(crate) fn contract(label: &'static str, detail: impl Into<String>) -> Self {
        Error::Contract {
            label,
            detail: detail.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
