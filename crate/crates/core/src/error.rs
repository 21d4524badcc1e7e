use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("uniformity must be at least 2, got {0}")]
    Uniformity(usize),
    #[error("edge {index} has {found} vertices, expected {expected}")]
    Arity {
        index: usize,
        found: usize,
        expected: usize,
    },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge {0} repeats a vertex")]
    RepeatedVertex(usize),
    #[error("uniformity mismatch: {left} vs {right}")]
    UniformityMismatch { left: usize, right: usize },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    Dimension { expected: usize, found: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("graph order {n} exceeds the enumeration ceiling {ceiling} for r = {r}")]
    CeilingExceeded { n: usize, r: usize, ceiling: usize },
    #[error("graph order {0} is too large for this operation (at most 128 vertices)")]
    TooLarge(usize),
    #[error("count overflowed 128 bits")]
    Overflow,
    #[error("malformed checkpoint token: {0}")]
    Checkpoint(String),
}

pub type Result<T> = core::result::Result<T, Error>;
