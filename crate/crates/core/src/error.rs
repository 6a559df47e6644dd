use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected n = {expected}, found n = {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    /// The grid cannot carry the partition in the requested sampling mode.
    #[error("configuration error: {0}")]
    Configuration(String),

    #[error("no convergence after {iterations} iterations (last sup-norm step {last_step:e})")]
    NonConvergence { iterations: usize, last_step: f64 },

    #[error("not implemented: {0}")]
    NotImplemented(String),

    #[error("blade component {blade:?}: {source}")]
    Component {
        blade: String,
        #[source]
        source: Box<Error>,
    },
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
