use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix dimensions must be positive, got {rows}x{cols}")]
    EmptyDimension { rows: usize, cols: usize },

    #[error("bit width {width} exceeds the word cap of {cap}")]
    WidthTooLarge { width: usize, cap: usize },

    #[error("value {value} at position {index} does not fit in {width} bits")]
    ValueOutOfRange { index: usize, value: u64, width: usize },

    #[error("size mismatch: expected {expected}, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },

    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("transposition needs two distinct indices, got {0} twice")]
    DegenerateTransposition(usize),

    #[error("mapping is not a bijection: image {0} repeated or missing")]
    NotABijection(usize),

    #[error("{what} {rows}x{cols} exceeds the supported bound {bound}")]
    DimensionBound {
        what: &'static str,
        rows: usize,
        cols: usize,
        bound: usize,
    },

    #[error("matrix is not semi-canonical")]
    NotSemiCanonical,

    #[error("matrix order {n} outside the supported range {min}..={max}")]
    OrderOutOfRange { n: usize, min: usize, max: usize },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph side {0} has no vertices")]
    EmptySide(&'static str),

    #[error("vertex label {0:?} appears on both sides")]
    SharedVertex(String),

    #[error("edge ({0}, {1}) listed twice")]
    RepeatedEdge(usize, usize),

    #[error("part {index} is not an S-permutation matrix: {reason}")]
    NotSPermutation { index: usize, reason: String },

    #[error("parts {first} and {second} overlap at ({row}, {col})")]
    Overlap {
        first: usize,
        second: usize,
        row: usize,
        col: usize,
    },

    #[error("expected {expected} parts, got {actual}")]
    FamilySize { expected: usize, actual: usize },
}
