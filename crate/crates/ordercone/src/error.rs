use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("ambient dimension {0} exceeds the configured cap {1} (set ORDERCONE_DIM_CAP to raise it)")]
    DimensionCap(usize, usize),

    #[error("cone is not pointed: {0}")]
    NotPointed(String),

    #[error("unknown named space `{0}`")]
    UnknownSpace(String),

    #[error("operation requires a convex set: {0}")]
    NotConvex(String),

    #[error("operation requires a closed set: {0}")]
    SemiOpenInput(String),

    #[error("strict constraints are not allowed here: {0}")]
    StrictConstraint(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("enumeration budget exceeded: {0}")]
    CapacityExceeded(String),

    #[error("inconsistent problem: {0}")]
    InconsistentProblem(String),

    #[error("operator is not order bounded on this space")]
    NotOrderBounded,

    #[error("internal invariant failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
