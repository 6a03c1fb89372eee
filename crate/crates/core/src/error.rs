use thiserror::Error;

/// Errors raised by constructions, searches and enumerations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// An enumerative path was asked to walk more than `2^cap` vectors.
    #[error("dimension {dim} exceeds the enumeration cap {cap}")]
    DimensionTooLarge { dim: usize, cap: usize },

    #[error("word is not a codeword (nonzero syndrome)")]
    InvalidCodeword,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParams(msg.into())
}
