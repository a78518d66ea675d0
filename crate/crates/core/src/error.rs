use thiserror::Error;

/// Errors shared across the library.
///
/// Exact arithmetic either succeeds or fails loudly; there are no
/// approximate fallbacks anywhere, so every computational dead end gets
/// its own variant.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("characteristic must be prime, got {0}")]
    NotPrime(u64),
    #[error("operands belong to different base fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("series is zero to tracked precision; cannot normalize")]
    ZeroSeries,
    #[error("requested precision unattainable: {0}")]
    PrecisionLoss(String),
    #[error("inner series must have valuation 1, found {0}")]
    NotInvertibleOrder(i64),
    #[error("point does not satisfy the curve equation")]
    PointNotOnCurve,
    #[error("curve is singular (discriminant vanishes)")]
    SingularCurve,
    #[error("translation point has finite order {0}")]
    TorsionPoint(u32),
    #[error("torsion check exhausted bound {0} without certifying")]
    TorsionBoundExceeded(u32),
    #[error("divisor support leaves the rational points: {0}")]
    NotRationalPoint(String),
    #[error("function is identically zero")]
    ZeroFunction,
    #[error("element is not a uniformizer at the point (valuation {0})")]
    NotAUniformizer(i64),
    #[error("divisor is not principal: {0}")]
    NotPrincipal(String),
    #[error("construction failed: {0}")]
    ConstructionFailure(String),
    #[error("independent recomputation disagrees: {0}")]
    CrossCheckFailure(String),
    #[error("operation requires characteristic {0}")]
    WrongCharacteristic(u64),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, col, msg: msg.into() }
    }
}
