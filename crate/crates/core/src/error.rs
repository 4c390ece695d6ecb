use thiserror::Error;

/// Errors raised by the geometry, meshing and analysis routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("polygon side count must satisfy n >= 3, got n = {0}")]
    TooFewSides(usize),
    #[error("apothem must satisfy R > 0 and be finite, got R = {0}")]
    InvalidApothem(f64),
    #[error("{name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },
    #[error("profile parameter t = {0} lies outside [0, pi/2]")]
    ProfileOutOfRange(f64),
    #[error("{name} must be at least {min}, got {value}")]
    CountTooSmall {
        name: &'static str,
        min: usize,
        value: usize,
    },
    #[error("slab index {index} outside 1..={count}")]
    SlabIndexOutOfRange { index: usize, count: usize },
    #[error("mesh is not watertight: {} bad edge(s), first: {:?}", .edges.len(), .edges.first())]
    NotWatertight { edges: Vec<EdgeDefect> },
    #[error("mesh is not outward oriented: signed volume {0}")]
    InwardOrientation(f64),
    #[error("triangle count {0} exceeds the 32-bit STL limit")]
    TooManyTriangles(usize),
    #[error("malformed {format} data: {reason}")]
    Parse {
        format: &'static str,
        reason: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// An undirected edge whose incidence violates the closed 2-manifold rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeDefect {
    pub a: usize,
    pub b: usize,
    /// Number of triangles using the edge (must be 2).
    pub uses: usize,
    /// Number of times the edge is traversed as a -> b (must be 1 for consistent winding).
    pub forward: usize,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
