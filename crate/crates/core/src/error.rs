use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the zero polynomial has no (1+z)-adic factorization")]
    ZeroPolynomial,
    #[error("invalid parameter range: {0}")]
    InvalidRange(String),
    #[error("codimension is zero; the obstruction series is undefined")]
    CodimZero,
    #[error("ideal is not quadratic: {0}")]
    NotQuadratic(String),
    #[error("ideal is not squarefree: {0}")]
    NotSquarefree(String),
    #[error("{count} generators exceed the certificate search cap of {cap}")]
    TooManyGenerators { count: usize, cap: usize },
    #[error("variable sets overlap: {0}")]
    OverlappingVariables(String),
    #[error("generator of degree {degree} exceeds the degree cap {cap}")]
    CapTooLow { degree: u32, cap: u32 },
    #[error("Groebner basis is only certified up to degree {cap}; degree {requested} was requested")]
    IncompleteBasis { cap: u32, requested: u32 },
    #[error("degree bound exceeded: {0}")]
    DegreeBoundExceeded(String),
    #[error("Betti table incomplete at cell ({i}, {j})")]
    IncompleteTable { i: usize, j: i64 },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown variable `{name}` at line {line}, column {column}")]
    UnknownVariable {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("non-homogeneous entry at line {line}: {message}")]
    NonHomogeneous { line: usize, message: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
