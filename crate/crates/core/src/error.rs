use thiserror::Error;

/// A type alias for `Result<T, Error>`.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in this crate.
#[derive(Clone, Debug, PartialEq, Error)]
pub enum Error {
    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("row {row} has {found} coordinates, expected {expected}")]
    DimensionMismatch {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("non-finite value at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not square: row {row} has {found} entries, expected {expected}")]
    NotSquare {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("matrix is not symmetric: worst pair ({i}, {j}) differs by {difference:e}")]
    Asymmetric { i: usize, j: usize, difference: f64 },

    #[error("diagonal entry ({i}, {i}) is {value}, expected 0")]
    NonZeroDiagonal { i: usize, value: f64 },

    #[error("negative distance {value} at ({i}, {j})")]
    NegativeDistance { i: usize, j: usize, value: f64 },

    #[error("condensed matrix has {found} entries, expected {expected} for n = {n}")]
    CondensedLength {
        n: usize,
        expected: usize,
        found: usize,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid coefficient sequence: {0}")]
    InvalidSequence(String),

    #[error("invalid linkage method: {0}")]
    InvalidMethod(String),

    #[error("weights for arity {arity} have a zero normalizer")]
    ZeroNormalizer { arity: usize },

    #[error("partial sum of the first {k} coefficients is zero")]
    ZeroPartialSum { k: usize },

    #[error("input `{0}` is not sorted in descending order")]
    Unsorted(&'static str),

    #[error("invalid cluster pair: {0}")]
    InvalidClusters(String),

    #[error("{method} linkage needs the original point coordinates; a distance matrix alone does not determine cluster centroids")]
    CoordinatesRequired { method: &'static str },

    #[error("{0}")]
    Unsupported(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Error {
        Error::Io(err.to_string())
    }
}
