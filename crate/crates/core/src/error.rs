use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("unknown variable {name:?} at position {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("exponent too large at position {position}")]
    ExponentOverflow { position: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("elements live in free modules of different rank ({0} vs {1})")]
    RankMismatch(usize, usize),
    #[error("input is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("resolution is not minimal: {0}")]
    NotMinimal(String),
    #[error("not a monomial: {0}")]
    NotMonomial(String),
    #[error("unit ideal: generator {0} has a nonzero constant term")]
    UnitIdeal(String),
    #[error("module is zero")]
    ZeroModule,
    #[error("module does not have finite length")]
    InfiniteLength,
    #[error("sequence too short: need at least {needed}, got {got}")]
    TooShort { needed: usize, got: usize },
    #[error("degree {requested} exceeds truncation cutoff {cutoff}")]
    BeyondCutoff { requested: i64, cutoff: i64 },
    #[error("no superficial element found in {trials} trials (last failure at degree {last_failure})")]
    NoSuperficial { trials: usize, last_failure: i64 },
    #[error("invalid instance: {0}")]
    Instance(String),
    #[error("{0}")]
    Usage(String),
    #[error("computation limit reached: {0}")]
    Limit(String),
}
