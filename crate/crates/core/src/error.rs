//! Error types.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("malformed element encoding `{0}`")]
    Element(String),
    #[error("malformed series encoding `{0}`")]
    Series(String),
    #[error("malformed artifact: {0}")]
    Artifact(String),
    #[error("malformed sample file: {0}")]
    Samples(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a supported characteristic")]
    BadCharacteristic(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero polynomial has no roots")]
    ZeroPolynomial,
    #[error("polynomial has no simple root in this field")]
    NoSimpleRoot,
    #[error("degree {0} is not part of this tower")]
    UnknownDegree(usize),
    #[error("element belongs to characteristic {found}, expected {expected}")]
    WrongCharacteristic { expected: u32, found: u32 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("precision mismatch: {0} vs {1}")]
    PrecisionMismatch(usize, usize),
    #[error("series is not a unit")]
    NonUnit,
    #[error("residue root is not a simple root of the residue polynomial")]
    NotSimpleRoot,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ForgeError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("budget exhausted at row {row}: {reason}")]
    BudgetExhausted { row: usize, reason: String },
    #[error("stage {stage} grew past the size budget ({size} > {limit})")]
    StageTooLarge { stage: usize, size: usize, limit: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("exhaustive search supports p in {{2, 3, 5}}, got {0}")]
    CapExceeded(u32),
}
