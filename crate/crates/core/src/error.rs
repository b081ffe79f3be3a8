use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("cell ({row},{col}) lies outside the diagram")]
    CellOutsideDiagram { row: usize, col: usize },

    #[error("partition {shape} does not fit inside the {rows}x{cols} rectangle")]
    NotContained { shape: String, rows: usize, cols: usize },

    #[error("malformed cell set: {0}")]
    MalformedCellSet(String),

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("enumeration of S_{k} exceeds the configured cap {cap}")]
    CapExceeded { k: usize, cap: usize },

    #[error("coefficient of x^{exponent} lies below the valid depth (lowest valid exponent {floor})")]
    InsufficientDepth { exponent: i64, floor: i64 },

    #[error("power series precondition violated: {0}")]
    SeriesPrecondition(String),

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("interpolation failed: {0}")]
    Interpolation(String),

    #[error("non-integral coefficient: {0}")]
    NonIntegral(String),

    #[error("parse error: {0}")]
    Parse(String),
}
