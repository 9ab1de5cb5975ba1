//! Crate-wide error type.
//!
//! Precondition violations that a caller can reasonably hand us (empty
//! input, wrong dimension, unmet theorem hypotheses) are reported as
//! `Error` values; internal invariant violations panic.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("zero vector has no primitive part")]
    ZeroVector,

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("polytope is lower-dimensional (dim {actual} < ambient {ambient}); reduce via affine_hull / project_to_quotient first")]
    LowerDimensional { ambient: usize, actual: usize },

    #[error("empty polyhedron")]
    EmptyPolyhedron,

    #[error("width is infinite: no nonzero integer functional is bounded on the input")]
    WidthInfinite,

    #[error("width certificate has classification {actual}, need {expected}")]
    WrongClassification {
        expected: &'static str,
        actual: &'static str,
    },

    #[error("theorem hypothesis not met: {0}")]
    Hypothesis(String),

    #[error("mod-3 completion requires all 3^d residues present (gamma bijective); {0}")]
    GammaNotBijective(String),

    #[error("point {0} is not a lattice point of the polytope")]
    PointNotInSet(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A conclusion the theorems guarantee failed to hold on this
    /// instance. Distinct from `Hypothesis`: hypothesis failures are
    /// input errors, violations are reportable counterexamples (and test
    /// failures).
    #[error("theorem violation: {0}")]
    Violation(String),
}
