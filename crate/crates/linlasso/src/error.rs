//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("empty file: {0}")]
    EmptyFile(String),

    #[error("missing cell at ({row}, {col})")]
    MissingCell { row: usize, col: usize },

    #[error("ragged row {row}: expected {expected} cells, found {found}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("response column {0:?} not found")]
    MissingResponse(String),

    #[error("response column must be numeric, {0:?} is nominal")]
    NominalResponse(String),

    #[error("nominal column {0:?} has a single level")]
    SingleLevel(String),

    #[error("column {0:?} is constant")]
    ConstantColumn(String),

    #[error("dataset needs at least {min} rows, found {found}")]
    TooFewRows { min: usize, found: usize },

    #[error("dataset needs at least one predictor column")]
    NoPredictors,

    #[error("matrix is not positive semidefinite: pivot {pivot:.3e} at step {step}")]
    NotPsd { pivot: f64, step: usize },

    #[error("matrix is not symmetric: |M[{i}][{j}] - M[{j}][{i}]| = {diff:.3e}")]
    NotSymmetric { i: usize, j: usize, diff: f64 },

    #[error("inconsistent singular system: residual {residual:.3e} exceeds tolerance")]
    InconsistentSystem { residual: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("selection index {index} out of range for {r} predictors")]
    IndexOutOfRange { index: usize, r: usize },

    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
