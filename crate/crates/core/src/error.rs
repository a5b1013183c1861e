use thiserror::Error;

/// Errors raised by the invariant arithmetic.
///
/// Every variant is a domain error: either the caller broke a precondition
/// or the topological input is internally inconsistent.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{0:?} is not characteristic: it is not congruent to w2 mod 2")]
    NotCharacteristic(Vec<i64>),

    #[error("non-integral {what} ({value}); the topology data is inconsistent")]
    NonIntegral { what: &'static str, value: String },

    #[error("operation requires b+ = 1, manifold has b+ = {0}")]
    BplusNotOne(usize),

    #[error("operation requires b1 = 0, manifold has b1 = {0}")]
    B1NotZero(usize),

    #[error("operation requires p_g = 0")]
    PgNotZero,

    #[error("(p1, c1) = ({p1}, {c1:?}) is not Spin^U(2)-admissible")]
    NotAdmissible { p1: i64, c1: Vec<i64> },

    #[error("form of degree {degree} has parity different from w_c = {w_c}")]
    ParityMismatch { degree: usize, w_c: i64 },

    #[error("exterior form is not homogeneous")]
    NotHomogeneous,

    #[error("u_c is not integral: <a{i} u a{j} u c, [X]> = {value} is odd")]
    UcNotIntegral { i: usize, j: usize, value: i64 },

    #[error("exterior algebra rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("period ray has non-positive square {0}")]
    NonPositiveRay(String),

    #[error("wall-crossing value {0} is not an integer")]
    NonIntegralWallCrossing(String),

    #[error("invalid Kähler data: {0}")]
    InvalidKahler(String),

    #[error("missing slope of the divisorial component for a nonzero section")]
    MissingDivisorSlope,

    #[error("slope of the divisorial component given for a zero section")]
    UnexpectedDivisorSlope,

    #[error("rank must be positive")]
    ZeroRank,

    #[error("semistability condition 2 requires ker(phi)_max")]
    MissingKernel,

    #[error("invalid pair profile: {0}")]
    InvalidProfile(String),

    #[error("no facts supplied to determine invariants")]
    InsufficientFacts,

    #[error("inconsistent invariants for c = {c:?}: {detail}")]
    Inconsistent { c: Vec<i64>, detail: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
