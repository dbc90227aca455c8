use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("truncation orders differ: {0} vs {1}")]
    TruncationMismatch(usize, usize),
    #[error("jet is not a unit (valuation {0})")]
    NonUnit(usize),
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is rank deficient within truncation order {0}")]
    RankDeficient(usize),
    #[error("truncation order {found} is below the required minimum {required}")]
    TruncationTooLow { found: usize, required: usize },
    #[error("support point {0} appears more than once")]
    RepeatedSupportPoint(String),
    #[error("input {index} is not a Lagrangian subspace")]
    NotLagrangian { index: usize },
    #[error("rank parameter mismatch: expected r = {expected}, found {found}")]
    RankParameter { expected: usize, found: usize },
    #[error("point is not a member of {0}")]
    NotMember(&'static str),
    #[error("divisor is not reduced at support point {0}")]
    NonReducedDivisor(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed input at {path}: {message}")]
    Format { path: String, message: String },
    #[error("cannot parse scalar {0:?}")]
    ParseScalar(String),
}

pub type Result<T> = std::result::Result<T, Error>;
