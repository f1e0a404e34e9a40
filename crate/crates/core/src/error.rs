use thiserror::Error;

/// Everything that can go wrong in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("weight mismatch: {0}")]
    InconsistentWeight(String),
    #[error("LG constant must be at least 2 (got {0})")]
    InvalidConstant(i64),
    #[error("not a lattice point: {0}")]
    NotLatticePoint(String),
    #[error("odd-degree polytopes are empty when the total weight is odd")]
    EmptyDomain,
    #[error("index set out of range: {0}")]
    InvalidIndexSet(String),
    #[error("invalid D-matrix: {0}")]
    InvalidMatrix(String),
    #[error("infeasible weights: {0}")]
    InfeasibleWeight(String),
    #[error("total weight {0} is odd")]
    OddTotalWeight(u64),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
