use thiserror::Error;

/// Errors surfaced by the library.
///
/// `Schema` covers malformed input documents, `Internal` covers broken
/// invariants that indicate a bug rather than bad input.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("presentation is not verifiably admissible within the length bound: normal-form path `{path}` of bound length survives")]
    NotAdmissible { path: String },

    #[error("prime field F_{p} is too small for this computation (requires p > {dim})")]
    FieldTooSmall { p: u64, dim: usize },

    #[error("{p} is not a prime, cannot build F_p")]
    NotPrime { p: u64 },

    #[error("a simple block of dimension {block_dim} did not split over the base field")]
    NonSplit { block_dim: usize },

    #[error("algebra has no projective-injective module; inverse construction undefined")]
    NoProjectiveInjective,

    #[error("bound exceeded while computing {what} (bound {bound})")]
    BoundExceeded { what: String, bound: usize },

    #[error("module dimension {dim} exceeds the configured cap {cap} (set AUSLANDER_MAX_DIM to raise)")]
    DimensionCap { dim: usize, cap: usize },

    #[error("isomorphism search budget exceeded ({points} grid points)")]
    IsoBudget { points: usize },

    #[error("schema error: {0}")]
    Schema(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;

impl CoreError {
    pub fn schema(msg: impl Into<String>) -> Self {
        CoreError::Schema(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        CoreError::Internal(msg.into())
    }
}
