use thiserror::Error;

use crate::exact::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("point lies outside the domain: constraint {constraint} is violated")]
    OutsideDomain { constraint: usize },

    #[error("operation needs a nonempty set")]
    EmptySet,

    #[error("{generators} generators exceed the enumeration bound {bound}")]
    EnumerationBound { generators: usize, bound: usize },

    #[error("the domain is empty")]
    InfeasibleDomain,

    #[error("point is not optimal: objective gap {gap}")]
    NotOptimal { gap: Rational },

    #[error("linear program has no optimal solution ({0})")]
    NoOptimum(&'static str),

    #[error("malformed rational token {token:?}: {reason}")]
    BadRational { token: String, reason: &'static str },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn dim(context: &'static str, expected: usize, found: usize) -> Self {
        Error::DimensionMismatch {
            context,
            expected,
            found,
        }
    }
}
