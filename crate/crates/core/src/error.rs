use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vector {0} is not in the rational span of the simple roots")]
    NotInRootSpan(String),

    #[error("unsupported rank {rank} for type {label} (valid: {window})")]
    UnsupportedRank {
        label: String,
        rank: usize,
        window: &'static str,
    },

    #[error("unknown Lie type {0:?}")]
    UnknownType(String),

    #[error("Weyl group order {order} exceeds the enumeration cap {cap}")]
    CapExceeded { order: u128, cap: u64 },

    #[error("height {height} exceeds the brute-force bound {bound}")]
    HeightExceeded { height: i64, bound: i64 },

    #[error("simple reflection index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("weight {0} is not dominant integral")]
    NotDominantIntegral(String),

    #[error("weight {0} is not in the weight lattice")]
    NotIntegral(String),

    #[error("fibonacci index must be at least 1")]
    FibonacciIndex,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("cache file: {0}")]
    Cache(String),
}
