use thiserror::Error;

/// Errors raised by graph construction, solvers, reductions and verifiers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid hamiltonian: {0}")]
    InvalidHamiltonian(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{what} of size {size} exceeds the cap of {cap}")]
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("graph is not bipartite")]
    NotBipartite,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error(
        "expander certification failed after {attempts} attempts \
         (best gap {best_gap:.6}, target {target})"
    )]
    CertificationFailed {
        attempts: usize,
        best_gap: f64,
        target: f64,
    },

    #[error("eigensolver did not converge: residual {residual:e} after {iterations} iterations")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("malformed input at `{field}`: {reason}")]
    Format { field: String, reason: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
