//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by kernel construction, quadrature, linear solves and
/// study orchestration.
#[derive(Debug, Error)]
pub enum Error {
    /// Fractional order outside (1, 2].
    #[error("invalid fractional order alpha = {alpha}: require 1 < alpha <= 2")]
    InvalidOrder { alpha: f64 },

    /// Quadrature rule parameters violate their invariants.
    #[error("invalid quadrature rule: {reason}")]
    InvalidRule { reason: String },

    /// Node set violates the sorted/distinct/interior invariants.
    #[error("invalid node set: {reason}")]
    InvalidNodes { reason: String },

    /// An integrand returned a non-finite value at a quadrature node.
    #[error("non-finite integrand value {value} at x = {x}")]
    NonFiniteIntegrand { x: f64, value: f64 },

    /// A pivot fell below the singularity threshold during LU factorization.
    #[error("singular matrix: pivot magnitude {pivot:.3e} at column {col} below threshold {threshold:.3e}")]
    SingularMatrix {
        col: usize,
        pivot: f64,
        threshold: f64,
    },

    /// Vector/matrix sizes disagree.
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// A problem was queried for an exact solution it does not carry.
    #[error("benchmark problem has no exact solution")]
    MissingExactSolution,

    /// Invalid study configuration.
    #[error("invalid study configuration: {reason}")]
    InvalidStudy { reason: String },

    /// A convergence-study cell failed; names the cell for diagnosis.
    #[error("study cell n = {n} failed: {source}")]
    StudyCell {
        n: usize,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
