use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported algebra: {0}")]
    UnsupportedAlgebra(String),

    #[error("unsupported pair: {0}")]
    UnsupportedPair(String),

    #[error("node {node} out of range for rank {rank}")]
    NodeOutOfRange { node: usize, rank: usize },

    #[error("weight has {got} labels, algebra {algebra} has rank {rank}")]
    RankMismatch {
        algebra: String,
        rank: usize,
        got: usize,
    },

    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),

    #[error("weight {0:?} is not strictly dominant")]
    NotStrictlyDominant(Vec<i64>),

    #[error("orbit of size {size} exceeds the enumeration cap {cap}")]
    OrbitCapExceeded { size: String, cap: u64 },

    #[error("word table line {line}: {reason}")]
    MalformedTable { line: usize, reason: String },

    #[error("word table count mismatch at length {length}: expected {expected}, found {found}")]
    TableCount {
        length: usize,
        expected: usize,
        found: usize,
    },

    #[error("word {word} is not reduced (canonical length {length})")]
    NotReduced { word: String, length: usize },

    #[error("word {word} sends the weight to {image:?}, which is not dominant on the subalgebra side")]
    NonDominantImage { word: String, image: Vec<i64> },

    #[error("permutation weight {image:?} produced twice")]
    DuplicateImage { image: Vec<i64> },

    #[error("evaluation point has a zero coordinate")]
    ZeroCoordinate,

    #[error("division by zero: {0}")]
    ZeroDenominator(String),

    #[error("invalid modulus {0}: must be a prime in [1e9, 2^63)")]
    InvalidModulus(u64),

    #[error("context size mismatch: expected {expected} variables, got {got}")]
    ContextMismatch { expected: usize, got: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("checkpoint: {0}")]
    Checkpoint(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
