use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),

    #[error("simplex {0:?} must have strictly increasing vertices")]
    NotStrictlyIncreasing(Vec<u32>),

    #[error("simplex {0:?} must have weakly increasing vertices")]
    NotWeaklyIncreasing(Vec<u32>),

    #[error("empty simplex in complex description")]
    EmptySimplex,

    #[error("duplicate maximal simplex {0:?}")]
    DuplicateSimplex(Vec<u32>),

    #[error("complex description could not be parsed: {0}")]
    Parse(String),

    #[error("malformed operator symbol `{0}`")]
    MalformedSymbol(String),

    #[error("operator {op} out of range on a simplex of dimension {dim}")]
    Dimension { op: String, dim: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("split level {level} out of range for {factors} factors")]
    LevelOutOfRange { level: usize, factors: usize },

    #[error("interval term is degenerate for ESA level {level}: {reason}")]
    DegenerateInput { level: usize, reason: String },

    #[error("invalid operation request: {0}")]
    InvalidRequest(String),

    #[error("invariant violated: {0}")]
    Invariant(String),
}
