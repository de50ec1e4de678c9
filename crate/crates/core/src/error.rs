use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank {rank} out of range for family {family}")]
    RankOutOfRange { family: char, rank: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("simple roots are linearly dependent")]
    DependentRoots,

    #[error("orbit bound exceeded: |W| = {order} > {bound}")]
    OrbitBound { order: u128, bound: u128 },

    #[error("index out of range: {0}")]
    Index(String),

    #[error("exponent is not theta-stable")]
    NotThetaStable,

    #[error("torus point is not of theta-fixed shape")]
    NotThetaFixed,

    #[error("torus point has a zero coordinate")]
    ZeroCoordinate,

    #[error("irregular point: {0}")]
    Irregular(String),

    #[error("exponent contexts or lengths differ: {0}")]
    ContextMismatch(String),

    #[error("order needs rank at least {needed}, got {got}")]
    OrderRank { needed: usize, got: usize },

    #[error("N = {n} is incompatible with target {target}")]
    TargetParity { n: usize, target: &'static str },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
