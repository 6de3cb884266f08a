use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// Parameters do not describe a valid scheme (negative or fractional
    /// intersection numbers, non-exact recurrence division, ...).
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    /// Two independent computations disagree. This always indicates a bug.
    #[error("internal consistency error: {0}")]
    Inconsistency(String),

    /// A lemma or theorem was invoked outside its hypotheses.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Unknown identifier or malformed request.
    #[error("usage error: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
