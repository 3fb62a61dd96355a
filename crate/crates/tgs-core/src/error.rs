//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("multi-index {index:?} has {got} components, expected {expected}")]
    ArityMismatch {
        index: Vec<usize>,
        expected: usize,
        got: usize,
    },
    #[error("multi-index {index:?} is out of range for dimension {dim}")]
    IndexOutOfRange { index: Vec<usize>, dim: usize },
    #[error("duplicate entry for multi-index {index:?}")]
    DuplicateIndex { index: Vec<usize> },
    #[error("tensor order must be at least 2, got {order}")]
    BadOrder { order: usize },
    #[error("tensor dimension must be at least 1, got {dim}")]
    BadDim { dim: usize },
    #[error("vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("scaling vector must be entrywise positive, got {value} at position {index}")]
    NonPositiveScale { index: usize, value: f64 },
    #[error("weight vector must be entrywise positive, got {value} at position {index}")]
    NonPositiveWeight { index: usize, value: f64 },
    #[error("entry at {index:?} is not real and nonnegative")]
    NotNonnegative { index: Vec<usize> },
    #[error("shift must be positive, got {shift}")]
    NonPositiveShift { shift: f64 },
    #[error("start vector must be entrywise positive, got {value} at position {index}")]
    NonPositiveStart { index: usize, value: f64 },
    #[error("operation requires an irreducible tensor")]
    NotIrreducible,
    #[error("no certified sign change found within {expansions} doubling steps")]
    ExpansionOverflow { expansions: usize },
    #[error("balance residual {residual:e} exceeds the threshold {threshold:e}")]
    NotBalanced { residual: f64, threshold: f64 },
    #[error("scaling factor must lie in [0, 1], got {value} at position {index}")]
    ScaleOutOfRange { index: usize, value: f64 },
    #[error("point is certified outside the region (v_upper = {v_upper:e})")]
    OutsideRegion { v_upper: f64 },
    #[error("bad raster box: {detail}")]
    BadBox { detail: String },
    #[error("plot spec must contain at least one layer")]
    EmptyPlot,
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("JSON: {0}")]
    Json(#[from] serde_json::Error),
}
