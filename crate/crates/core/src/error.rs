use thiserror::Error;

use crate::arith::Rational;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("singular matrix (determinant {det})")]
    Singular { det: Rational },

    #[error("radicand mismatch: sqrt({left}) vs sqrt({right})")]
    RadicandMismatch { left: String, right: String },

    #[error("division by zero")]
    DivisionByZero,

    /// Nonzero element of norm zero; only possible when the radicand is a
    /// rational square.
    #[error("element {0} is a zero divisor in Q(sqrt d)")]
    ZeroDivisor(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// A minor that must be positive is not; `what` names its rows/columns.
    #[error("hypothesis violated: minor {what} is {value}")]
    HypothesisViolation { what: String, value: Rational },

    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("not totally positive: parameter `{param}` {reason}")]
    NotTotallyPositive { param: char, reason: String },

    #[error("degenerate pencil: the two bilinear forms are proportional")]
    DegeneratePencil,

    #[error("no real solution: discriminant {0} < 0")]
    NoRealSolution(Rational),

    #[error("double root: discriminant is zero, the two transversals coincide")]
    DoubleRoot,

    #[error("non-generic configuration: {0}")]
    NonGeneric(String),

    #[error("degenerate line: spanning matrix has rank < 2")]
    DegenerateLine,

    #[error("curve not convex at 0: derivative vectors are dependent")]
    NotConvexAtZero,

    #[error("cusp at t = {0}: value and derivative are dependent")]
    Cusp(Rational),

    #[error("epsilon search failed after {0} halvings")]
    SearchFailure(u32),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
