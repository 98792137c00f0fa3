use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("index {index} out of range for p = {p}")]
    IndexOutOfRange { index: usize, p: usize },

    #[error("invalid coded symbol: {0}")]
    InvalidSymbol(String),

    /// The requested construction does not apply to these parameters.
    #[error("{construction}: {detail}")]
    ParameterRange {
        construction: &'static str,
        detail: String,
    },

    /// Proven impossible: no code gives every client exactly one message.
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// No known construction covers this instance.
    #[error("unsupported: no construction covers p = {p}, k = {k}")]
    Unsupported { p: usize, k: usize },

    #[error("oracle bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("malformed index code: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn range(construction: &'static str, detail: impl Into<String>) -> Self {
        Error::ParameterRange {
            construction,
            detail: detail.into(),
        }
    }
}
