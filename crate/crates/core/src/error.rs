use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("unknown built-in `{0}` (expected filiform:n, schrodinger:d, heisenberg:d, sl2 or abelian:n)")]
    UnknownFamily(String),

    #[error("parameter out of range for `{spec}`: {reason}")]
    ParameterOutOfRange { spec: String, reason: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("element of degree {degree} exceeds the degree limit {limit}")]
    DegreeLimit { degree: usize, limit: usize },

    #[error("realisation `{name}` does not match algebra `{algebra}`: {reason}")]
    RealizationMismatch {
        name: String,
        algebra: String,
        reason: String,
    },

    #[error("operator spaces differ ({left} vs {right})")]
    IncompatibleOperators { left: String, right: String },

    #[error("invalid search request: {0}")]
    InvalidSearch(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
