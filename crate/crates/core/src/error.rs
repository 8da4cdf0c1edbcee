use thiserror::Error;

/// Every failure the toolkit can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("composition error: codomain {left} does not match domain {right}")]
    Composition { left: String, right: String },

    #[error("diagram error: {0}")]
    Diagram(String),

    #[error("enumeration too large: {count} candidates exceed bound {bound}")]
    EnumerationTooLarge { count: String, bound: u64 },

    #[error("size guard exceeded: {what} would have {size} elements (bound {bound})")]
    ObjectTooLarge { what: String, size: String, bound: u64 },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("incompatible: {0}")]
    Incompatible(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("strictness error: {0}")]
    Strictness(String),

    #[error("unknown adjunction spec: {0}")]
    UnknownSpec(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("io error: {0}")]
    Io(String),

    /// A construction that is guaranteed by theory produced an ill-formed result.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_size_guard(&self) -> bool {
        matches!(
            self,
            Error::EnumerationTooLarge { .. } | Error::ObjectTooLarge { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
