use thiserror::Error;

/// Errors raised by the algebra, linear algebra and analysis layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable-set mismatch")]
    VarSetMismatch,
    #[error("coefficient field mismatch: {0}")]
    FieldMismatch(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid variable set: {0}")]
    InvalidVarSet(String),
    #[error("unbound variable `{0}` in substitution")]
    UnboundVariable(String),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("bad prime {prime}: {reason}")]
    BadPrime { prime: u64, reason: String },
    #[error("point has {got} coordinates, expected {expected}")]
    PointLength { expected: usize, got: usize },
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("matrix shape error: {0}")]
    Shape(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("degree bound {degree} is not below the prime {prime}; refusing a vacuous check")]
    DegreeTooLarge { degree: u64, prime: u64 },
    #[error("exact rank modulo f is infeasible for this input ({0}); use the sampling strategy")]
    ExactInfeasible(String),
    #[error("no point found on the hypersurface after {0} lines")]
    RetryBudgetExhausted(usize),
    #[error("input is a cone; vertex direction {0}")]
    Cone(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
