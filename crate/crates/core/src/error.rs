use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A caller supplied something outside an operation's domain: a
    /// mismatched space, an unknown label, a malformed projector family.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// A numerical result fell outside the range the mathematics allows,
    /// beyond the configured float-noise slack.
    #[error("numeric domain error: {0}")]
    NumericDomain(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::NumericDomain(msg.into()))
}
