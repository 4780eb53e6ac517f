use thiserror::Error;

/// Errors shared across the lattice, surface and wall modules.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum K3Error {
    #[error("the zero Mukai vector is degenerate input")]
    DegenerateVector,

    #[error("the given pair does not span a hyperbolic lattice")]
    NotHyperbolic,

    #[error("basis vectors are proportional")]
    DependentBasis,

    #[error("gcd(h, k) must be 1, got h = {h}, k = {k}")]
    GcdViolation { h: i64, k: i64 },

    #[error("wall vector is orthogonal to both basis directions (vertical wall)")]
    VerticalWall,

    #[error("semicircle radius degenerates at gamma >= k/h")]
    DegenerateRadius,

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}
