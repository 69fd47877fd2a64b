use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring context mismatch: {0}")]
    Context(String),

    #[error("field error: {0}")]
    Field(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("rank mismatch: expected {expected}, found {found}")]
    Rank { expected: usize, found: usize },

    #[error("Groebner basis computation exceeded the degree limit {limit} (reached {reached})")]
    DegreeLimit { limit: u32, reached: u32 },

    #[error("not a matrix factorization: {0}")]
    Factorization(String),

    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("catalog error: {0}")]
    Catalog(String),
}

impl Error {
    pub(crate) fn parse(column: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line: 1,
            column,
            message: message.into(),
        }
    }

    /// Shifts a single-line parse error to its position in a larger text.
    pub(crate) fn at_line(self, line: usize, column_offset: usize) -> Error {
        match self {
            Error::Parse { column, message, .. } => Error::Parse {
                line,
                column: column + column_offset,
                message,
            },
            other => other,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
