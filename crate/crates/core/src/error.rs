use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("evaluation domain error: {0}")]
    EvaluationDomain(String),

    /// A square root was requested of a quantity that is negative at q = 1.
    /// For matrix elements of valid patterns this never happens, so it flags
    /// an implementation bug rather than bad input.
    #[error("negative radicand anomaly: {0}")]
    NegativeRadicandAnomaly(String),

    /// A transformation coefficient violated a structural expectation
    /// (e.g. a valid target pattern with a vanishing denominator).
    #[error("formula anomaly: {0}")]
    FormulaAnomaly(String),

    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("basis too large: more than {cap} patterns")]
    BasisTooLarge { cap: usize },

    #[error("index {index} outside the window of row {row}")]
    IndexOutOfWindow { row: usize, index: i64 },

    #[error("{what} needs rows beyond depth {depth}")]
    DepthExceeded { what: String, depth: usize },

    #[error("pattern not in basis: {0}")]
    PatternNotInBasis(String),

    #[error("degenerate assignment: {0}")]
    DegenerateAssignment(String),

    #[error("integrity check failed: {0}")]
    Integrity(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
