use thiserror::Error;

/// Errors produced by the solver library.
#[derive(Debug, Error)]
pub enum Error {
    /// A constructor or operation received an argument outside its admissible range.
    #[error("invalid parameter `{field}`: {message}")]
    Parameter {
        /// Name of the offending field or argument.
        field: &'static str,
        message: String,
    },

    /// An evaluation point lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical procedure failed (root finding, factorization, gamma pole, ...).
    #[error("numeric failure: {0}")]
    Numeric(String),
}

impl Error {
    pub(crate) fn parameter(field: &'static str, message: impl Into<String>) -> Self {
        Error::Parameter {
            field,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
