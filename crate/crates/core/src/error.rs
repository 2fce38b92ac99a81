use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid root system type `{0}`")]
    InvalidType(String),

    #[error("rank {rank} is not valid for family {family}")]
    InvalidRank { family: char, rank: usize },

    #[error("dual partition precondition violated: {0}")]
    DualPartition(String),

    #[error("rank {rank} exceeds the configured enumeration bound {bound}")]
    RankBound { rank: usize, bound: usize },

    #[error("k must be positive, got {0}")]
    NonPositiveK(i64),

    #[error("zero covector")]
    ZeroCovector,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("hyperplane is not a member of the arrangement")]
    NotInArrangement,

    #[error("subspace is not a flat of the arrangement")]
    NotAFlat,

    #[error("subset is not a rank-2 localization of the positive roots")]
    NotRank2Localization,

    #[error("lattice bound exceeded: {0}")]
    LatticeBound(String),

    #[error("size bound exceeded: {0}")]
    SizeBound(String),

    #[error("polynomial is not divisible by (t - 1)")]
    NotDivisible,

    #[error("finite-field interpolation inconsistent (bad reduction): {0}")]
    BadReduction(String),

    #[error("invalid prime set: {0}")]
    InvalidPrimes(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("cache error: {0}")]
    Cache(String),

    #[error("unknown root `{0}`")]
    UnknownRoot(String),
}
