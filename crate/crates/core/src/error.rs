use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("group not finite under cap of {cap} elements")]
    GroupNotFinite { cap: usize },
    #[error("degree cap {cap} exceeded (degree {degree} required)")]
    DegreeCap { cap: usize, degree: usize },
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
