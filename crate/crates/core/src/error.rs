use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("table does not define a group: {0}")]
    NonGroup(String),
    #[error("generated group exceeds the order cap of {cap}")]
    ClosureOverflow { cap: usize },
    #[error("subgroup is not normal in {0}")]
    NotNormal(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("linear system has no solution")]
    NoSolution,
    #[error("operands live in different rings")]
    ContextMismatch,
    #[error("element is not a unit")]
    NotUnit,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("unit does not normalize the subgroup")]
    NotNormalizing,
    #[error("no group element induces the automorphism (precision anomaly)")]
    FactorizationFailed,
    #[error("cocycle is not a coboundary at this precision (anomaly)")]
    NoCoboundary,
    #[error("no unit intertwiner found within budget")]
    NoUnitIntertwiner,
    #[error("centralizer rank {rank} exceeds enumeration limit {limit}")]
    RankTooLarge { rank: usize, limit: usize },
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
