use thiserror::Error;

/// Errors raised by the library.
///
/// The CLI maps `Input` to exit code 2 and `Precondition` to exit code 3.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed data: bad literals, dimension mismatches, zero normals.
    #[error("input error: {0}")]
    Input(String),
    /// Well-formed data that violates an operation's precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A cone-witness basis whose halfspaces fail to cover the normal set.
    #[error("basis does not realize the cone number: {0}")]
    NotMaximalBasis(String),
    /// Random instance generation gave up.
    #[error("sampling failed: {0}")]
    Sampling(String),
    /// A postcondition that should be impossible to break was broken.
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn input(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

pub(crate) fn internal(msg: impl Into<String>) -> Error {
    Error::Internal(msg.into())
}
