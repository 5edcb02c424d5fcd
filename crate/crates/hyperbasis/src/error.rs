//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimensionality must be at least 1")]
    InvalidDimension,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("operation requires at least one operand")]
    EmptyOperands,

    #[error("cannot finalize an empty accumulator")]
    EmptyAccumulator,

    #[error("set size must be at least {min}, got {got}")]
    SetTooSmall { min: usize, got: usize },

    #[error("r must lie in [0, 1], got {0}")]
    ROutOfRange(f64),

    #[error("{what} must be finite, got {value}")]
    NonFinite { what: &'static str, value: f64 },

    #[error("interval is empty: lower bound {a} is not below upper bound {b}")]
    EmptyInterval { a: f64, b: f64 },

    #[error("target state must lie in 1..={d}, got {target}")]
    TargetOutOfRange { target: usize, d: usize },

    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),

    #[error("basis has kind {got:?}, expected {expected:?}")]
    WrongBasisKind { expected: crate::basis::BasisKind, got: crate::basis::BasisKind },

    #[error("record has {values} values but key set holds only {keys} keys")]
    TooFewKeys { keys: usize, values: usize },

    #[error("class {0} has no training samples")]
    ClassWithoutSamples(usize),

    #[error("class label {label} is out of range for {k} classes")]
    ClassOutOfRange { label: usize, k: usize },

    #[error("training set is empty")]
    EmptyTrainingSet,

    #[error("test set is empty")]
    EmptyTestSet,

    #[error("train fraction must lie strictly between 0 and 1, got {0}")]
    FractionOutOfRange(f64),

    #[error("schema names column {0:?} but the CSV header does not contain it")]
    MissingColumn(String),

    #[error("row {row}, column {column:?}: cannot parse cell {value:?}")]
    CellParse { row: usize, column: String, value: String },

    #[error("schema error: {0}")]
    Schema(String),

    #[error("malformed container: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
