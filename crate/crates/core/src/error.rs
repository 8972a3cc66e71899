use thiserror::Error;

/// Errors raised by the polytope and root-system routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input outside the domain of an operation (bad family/rank, non-dominant weight, ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// The half-space system does not describe a bounded set; `ray` is a
    /// nonzero direction of its recession cone.
    #[error("unbounded polyhedron, recession direction ({})", fmt_ray(.ray))]
    Unbounded { ray: Vec<String> },

    #[error("polytope has affine dimension {affine_dim} < ambient {ambient}: {what}")]
    LowerDimensional {
        affine_dim: usize,
        ambient: usize,
        what: String,
    },

    /// A required precondition failed; the message names the failing check.
    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("resource cap exceeded: {what} ({requested} > cap {cap})")]
    Resource {
        what: String,
        requested: u128,
        cap: u128,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

fn fmt_ray(ray: &[String]) -> String {
    ray.join(",")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
