use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("invalid modulus {0}: need an odd prime below 2^31")]
    InvalidModulus(u64),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("degree bound too small: {0}")]
    BoundTooSmall(String),
    #[error("not a module map: {0}")]
    NotAModuleMap(String),
    #[error("not a nonzerodivisor: {0}")]
    NotNzd(String),
    #[error("module is not saturated: {0}")]
    NotSaturated(String),
    #[error("not a system of parameters: {0}")]
    NotSop(String),
    #[error("not normalized: {0}")]
    NotNormalized(String),
    #[error("koszul limit did not stabilize: {0}")]
    StabilizationFailure(String),
    #[error("wrong rank: {0}")]
    WrongRank(String),
    #[error("null-correlation bundles need odd n, got {0}")]
    EvenN(usize),
    #[error("bad ideal: {0}")]
    BadIdeal(String),
    #[error("band violation: {0}")]
    BandViolation(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Io(_) => 2,
            Error::BoundTooSmall(_) => 4,
            _ => 3,
        }
    }

    /// Short machine-readable tag.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "ParseError",
            Error::InvalidModulus(_) => "InvalidModulus",
            Error::DegreeMismatch(_) => "DegreeMismatch",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::BoundTooSmall(_) => "BoundTooSmall",
            Error::NotAModuleMap(_) => "NotAModuleMap",
            Error::NotNzd(_) => "NotNZD",
            Error::NotSaturated(_) => "NotSaturated",
            Error::NotSop(_) => "NotSOP",
            Error::NotNormalized(_) => "NotNormalized",
            Error::StabilizationFailure(_) => "StabilizationFailure",
            Error::WrongRank(_) => "WrongRank",
            Error::EvenN(_) => "EvenN",
            Error::BadIdeal(_) => "BadIdeal",
            Error::BandViolation(_) => "BandViolation",
            Error::Invalid(_) => "InvalidInput",
            Error::Io(_) => "IoError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
