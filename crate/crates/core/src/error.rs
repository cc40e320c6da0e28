use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid partition {parts:?}: {reason}")]
    InvalidPartition { parts: Vec<usize>, reason: String },

    #[error("malformed GT pattern: {0}")]
    GtShape(String),

    #[error("weight {z:?} not in lattice for lambda {lambda:?}")]
    NotInLattice { lambda: Vec<usize>, z: Vec<i64> },

    #[error("weight {z:?} not permissible in lambda {lambda:?}")]
    NotPermissible { lambda: Vec<usize>, z: Vec<i64> },

    #[error("not a valid occupation for z={z:?}, N={n}, d={d}")]
    InvalidOccupation { z: Vec<i64>, n: usize, d: usize },

    #[error("sector empty: N={n} particles need more than d={d} rows")]
    EmptySector { n: usize, d: usize },

    #[error("configuration {occupations:?} is not permissible in lambda {lambda:?}")]
    ImpermissibleConfig { occupations: Vec<usize>, lambda: Vec<usize> },

    #[error("duplicate configuration {0:?}")]
    DuplicateConfig(Vec<usize>),

    #[error("invalid add-a-box path {path:?} for lambda {lambda:?}")]
    InvalidPath { lambda: Vec<usize>, path: Vec<usize> },

    #[error("degenerate label pair at level {s}: {detail}")]
    DegenerateLabels { s: usize, detail: String },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("dimension {dim} exceeds cap {cap}")]
    DimensionCap { dim: u128, cap: u128 },

    #[error("degenerate LCU: L={0} (need L >= 2)")]
    DegenerateLcu(u64),

    #[error("no amplification needed: l1={0}")]
    NoAmplification(f64),

    #[error("validation error: {0}")]
    Validation(String),

    #[error("internal invariant breach: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit status: 1 validation, 2 computation cap, 3 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::DimensionCap { .. } => 2,
            Error::Internal(_) => 3,
            _ => 1,
        }
    }
}
