use thiserror::Error;

/// Errors raised by the algebra and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or mismatched input.
    #[error("input error: {0}")]
    Input(String),
    /// The request is outside what this library models.
    #[error("unsupported: {0}")]
    Capability(String),
    /// An intermediate integer left the 64-bit range.
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn input(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}

pub(crate) fn capability(msg: impl Into<String>) -> Error {
    Error::Capability(msg.into())
}
