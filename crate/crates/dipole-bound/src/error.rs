//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Bad configuration value or malformed config file.
    #[error("configuration: {0}")]
    Config(String),

    /// Argument outside the mathematical domain of an operation.
    #[error("domain: {0}")]
    Domain(String),

    /// A recurrence denominator vanished while generating coefficients.
    #[error("recurrence denominator vanishes at order nu = {nu}")]
    SingularOrder { nu: i64 },

    /// The truncated linear system has no unique solution.
    #[error("singular truncated system: {0}")]
    SingularSystem(String),

    /// A termination case has no solution for the requested inputs.
    #[error("no solution: {0}")]
    NoSolution(String),

    /// Caller violated an operation contract.
    #[error("contract: {0}")]
    Contract(String),

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
