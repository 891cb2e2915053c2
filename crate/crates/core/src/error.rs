use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GammaError {
    /// Input violates a precondition of the operation (shape mismatch, invalid table, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The operation needs an enumerable carrier and the one at hand is not.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A configured search or enumeration bound would be exceeded.
    #[error("resource bound exceeded: {0}")]
    Resource(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, GammaError>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(GammaError::Domain(msg.into()))
}
