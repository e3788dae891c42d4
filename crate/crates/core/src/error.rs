use thiserror::Error;

/// Everything that can go wrong while building cones or running goals.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("input is empty")]
    EmptyInput,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("vectors do not span the space")]
    DoesNotSpan,
    #[error("grading is not positive on some nonzero cone point")]
    GradingNotPositive,
    #[error("dehomogenization is negative somewhere on the cone")]
    DehomogenizationNegative,
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("polyhedron is empty")]
    EmptyPolyhedron,
    #[error("input does not define a full-dimensional polytope in its ambient space")]
    NotDirectPolytope,
    #[error("no dehomogenization present; input does not define a polyhedron")]
    NoDehomogenization,
    #[error("enumeration guard exceeded ({limit} elements)")]
    EnumerationGuard { limit: u64 },
    #[error("unsupported parameter: {0}")]
    Unsupported(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
