use thiserror::Error;

use crate::graph::Mode;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{mode}-index {index} out of range (size {size})")]
    IndexOutOfRange { mode: Mode, index: usize, size: usize },

    #[error("line {line}: {mode}-index {index} out of range (size {size})")]
    EdgeOutOfRange {
        line: usize,
        mode: Mode,
        index: usize,
        size: usize,
    },

    #[error("two-path multiplicity requires two nodes of the same mode")]
    MixedMode,

    #[error("two-path multiplicity requires two distinct nodes")]
    SameNode,

    #[error("dyad ({0}, {1}) is already present")]
    EdgePresent(usize, usize),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: duplicate edge ({a}, {b})")]
    DuplicateEdge { line: usize, a: usize, b: usize },

    #[error("invalid shape parameter {shape} for {term}")]
    InvalidShape { term: &'static str, shape: f64 },

    #[error("unknown term `{0}`")]
    UnknownTerm(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("invalid sampler configuration: {0}")]
    InvalidSampler(String),

    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cycle enumeration exceeded the work limit of {0} extensions")]
    WorkLimit(u64),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn config(line: usize, message: impl Into<String>) -> Self {
        Error::Config {
            line,
            message: message.into(),
        }
    }

    /// True for failures of the numerical machinery rather than of the input.
    pub fn is_numeric(&self) -> bool {
        matches!(self, Error::Numeric(_) | Error::WorkLimit(_))
    }
}
