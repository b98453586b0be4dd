use thiserror::Error;

/// Errors produced by the group, character and verification engines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("generator {index} is not a permutation: {reason}")]
    MalformedPermutation { index: usize, reason: String },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("element is not contained in the group: {0}")]
    NotMember(String),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("subgroup is not normal: {0}")]
    NotNormal(String),

    #[error("element is not a {p}-element")]
    NotPElement { p: u64 },

    #[error("{what}: {value} exceeds bound {bound}")]
    BoundExceeded { what: String, value: u128, bound: u128 },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("attempt to invert zero")]
    DivisionByZero,

    #[error("{0} is not a unit modulo {1}")]
    NotUnit(u64, u64),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn bound(what: impl Into<String>, value: u128, bound: u128) -> Self {
        Error::BoundExceeded { what: what.into(), value, bound }
    }

    /// Whether the error reports an exceeded computational bound.
    pub fn is_bound(&self) -> bool {
        matches!(self, Error::BoundExceeded { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::InvalidInput(format!("malformed document: {e}"))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
