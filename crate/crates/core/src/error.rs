//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A value violates an invariant the caller promised to uphold.
    #[error("contract violation: {0}")]
    ContractViolation(String),
    /// A physical precondition (resonance, parameter relation) does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// The integrator lost norm or trace beyond tolerance.
    #[error("integration failure: {0}")]
    Integration(String),
    /// A configuration document is malformed or inconsistent.
    #[error("config error: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
