use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument was outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameters: {0}")]
    Params(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// A nucleotide tuple read back from a strand is not in the mapping table.
    #[error("strand {strand:?}: tuple {tuple} is not in the mapping table")]
    InvalidTuple {
        strand: Option<usize>,
        tuple: String,
    },

    /// Decoded block or symbol value falls outside the representable range.
    #[error("strand {strand:?}: decoded value {value} out of range (limit {limit})")]
    Range {
        strand: Option<usize>,
        value: u64,
        limit: u64,
    },

    #[error("value does not fit in {symbols} symbols")]
    Capacity { symbols: usize },

    #[error("chunk {chunk}: no compliant strand within {iterations} iterations")]
    EncodingFailure { chunk: usize, iterations: u8 },

    #[error("corrupt archive: {0}")]
    Corruption(String),

    #[error("I/O error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn corruption(msg: impl Into<String>) -> Self {
        Error::Corruption(msg.into())
    }

    pub(crate) fn with_strand(self, index: usize) -> Self {
        match self {
            Error::InvalidTuple { tuple, .. } => Error::InvalidTuple {
                strand: Some(index),
                tuple,
            },
            Error::Range { value, limit, .. } => Error::Range {
                strand: Some(index),
                value,
                limit,
            },
            Error::Corruption(msg) => Error::Corruption(format!("strand {index}: {msg}")),
            other => other,
        }
    }

    /// True for errors that indicate damaged or inconsistent encoded data.
    pub fn is_corruption(&self) -> bool {
        matches!(
            self,
            Error::InvalidTuple { .. } | Error::Range { .. } | Error::Corruption(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
