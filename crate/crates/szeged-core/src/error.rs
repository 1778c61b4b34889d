use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("enumeration cap exceeded: requested {requested}, cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
