use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error: expected {}, found {found}", expected.join(" or "))]
    Syntax { expected: Vec<String>, found: String },

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),

    #[error("arity mismatch for `{symbol}`: expected {expected}, got {got}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        got: usize,
    },

    #[error("sort mismatch: {0}")]
    SortMismatch(String),

    #[error("fragment violation: {0}")]
    FragmentViolation(String),

    /// A search or enumeration would visit more candidates than allowed.
    #[error("bound exceeded: {what} requires {required}, limit is {limit}")]
    BoundExceeded {
        what: String,
        required: String,
        limit: u64,
    },

    #[error("degenerate Boolean algebra (0 = 1) has no ultrafilters")]
    DegenerateAlgebra,

    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("equality backend unavailable: {0}")]
    BackendUnavailable(String),

    #[error("unsupported theory: {0}")]
    Unsupported(String),

    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    pub(crate) fn bound(what: impl Into<String>, required: impl fmt::Display, limit: u64) -> Self {
        Error::BoundExceeded {
            what: what.into(),
            required: required.to_string(),
            limit,
        }
    }
}

/// Line/column position in DSL source, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{location}: {error}")]
pub struct ParseError {
    pub location: Location,
    pub error: Error,
}
