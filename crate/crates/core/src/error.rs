use thiserror::Error;

/// Every failure the library reports. Variants carry enough context to locate the offending input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree-of-freedom mismatch: {left} vs {right}")]
    DofMismatch { left: usize, right: usize },

    #[error("generator has a term of order {order}; Lie transforms need order >= 3")]
    LowOrderGenerator { order: u32 },

    #[error("small divisor {divisor:e} at key {key} (orders up to {completed_order} were solved)")]
    SmallDivisor {
        key: String,
        divisor: f64,
        completed_order: u32,
    },

    #[error("input is not in Fermi form: {0}")]
    NotFermiForm(String),

    #[error("matrix is not symmetric positive definite")]
    NotPositiveDefinite,

    #[error("frequencies {0:?} are degenerate")]
    DegenerateFrequencies(Vec<f64>),

    #[error("invariant family is infeasible in block {block}: {reason}")]
    InfeasibleInvariants { block: usize, reason: String },

    #[error("no sign candidate satisfies the determinant-sum test (best residual {residual:e})")]
    NoSymplecticCandidate { residual: f64 },

    #[error("loop reconstruction is discontinuous at sample {sample}")]
    DiscontinuousLoop { sample: usize },

    #[error("not enough levels: found {found} of {wanted} frequencies")]
    InsufficientLevels { found: usize, wanted: usize },

    #[error("gap {gap} lies within {distance:e} of the lattice, which is ambiguous at tolerance {tol:e}")]
    AmbiguousLattice { gap: f64, distance: f64, tol: f64 },

    #[error("linear system is rank deficient at order {order}: rank {rank} < {unknowns}; unresolved {unresolved:?}")]
    RankDeficient {
        order: u32,
        rank: usize,
        unknowns: usize,
        unresolved: Vec<String>,
    },

    #[error("missing data: {0}")]
    MissingData(String),

    #[error("residual {residual:e} exceeds tolerance {tol:e} ({context})")]
    Residual {
        residual: f64,
        tol: f64,
        context: String,
    },

    #[error("kernel is singular at time {time}")]
    SingularKernel { time: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
