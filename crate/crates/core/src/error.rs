use thiserror::Error;

#[derive(Debug, Error)]
pub enum SaxlError {
    #[error("degree mismatch: expected {expected}, got {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("{what} cap exceeded: {actual} > {limit}")]
    CapExceeded {
        what: &'static str,
        limit: u128,
        actual: u128,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("not found: {0}")]
    NotFound(String),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("group order mismatch: expected {expected}, got {found}")]
    OrderMismatch { expected: String, found: String },

    #[error("invalid variant: {0}")]
    InvalidVariant(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown catalogue id {0:?}")]
    UnknownCatalogueId(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl SaxlError {
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(self, SaxlError::CapExceeded { .. })
    }

    pub(crate) fn cap(what: &'static str, limit: impl Into<u128>, actual: impl Into<u128>) -> Self {
        SaxlError::CapExceeded {
            what,
            limit: limit.into(),
            actual: actual.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, SaxlError>;
