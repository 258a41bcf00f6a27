use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("column {0} has an empty interval")]
    EmptyColumn(usize),
    #[error("columns {0} and {} do not overlap", .0 + 1)]
    DisconnectedColumns(usize),
    #[error("region has no columns")]
    NoColumns,
    #[error("vertical shift {dy} is not a multiple of the step set's unit {unit}")]
    BadShiftUnit { dy: i64, unit: i64 },
    #[error("step {step} is not allowed in step set {step_set}")]
    StepNotAllowed { step: String, step_set: String },
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("construction failed at step {step}: {reason}")]
    ConstructionFailure { step: u8, reason: String },
    #[error("paths share no admissible vertex")]
    NoIntersection,
    #[error("enumeration too large: estimated {estimate} nodes exceeds limit {limit}")]
    EnumerationTooLarge { estimate: u128, limit: u128 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid transition model: {0}")]
    InvalidModel(String),
    #[error("start point {0:?} is not on the left boundary")]
    InvalidStart((i64, i64)),
    #[error("linear system is singular")]
    SingularSystem,
    #[error("no convergence within limit {0}")]
    NoConvergence(i64),
    #[error("target is unreachable by monotone paths")]
    UnreachableB,
    #[error("closed form did not produce an integer")]
    NonIntegerResult,
    #[error("parity mismatch: {0}")]
    ParityMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EmptyColumn(_) => "EmptyColumn",
            Error::DisconnectedColumns(_) => "DisconnectedColumns",
            Error::NoColumns => "NoColumns",
            Error::BadShiftUnit { .. } => "BadShiftUnit",
            Error::StepNotAllowed { .. } => "StepNotAllowed",
            Error::InvalidInstance(_) => "InvalidInstance",
            Error::ConstructionFailure { .. } => "ConstructionFailure",
            Error::NoIntersection => "NoIntersection",
            Error::EnumerationTooLarge { .. } => "EnumerationTooLarge",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::InvalidModel(_) => "InvalidModel",
            Error::InvalidStart(_) => "InvalidStart",
            Error::SingularSystem => "SingularSystem",
            Error::NoConvergence(_) => "NoConvergence",
            Error::UnreachableB => "UnreachableB",
            Error::NonIntegerResult => "NonIntegerResult",
            Error::ParityMismatch(_) => "ParityMismatch",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
