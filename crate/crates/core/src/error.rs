use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown polytope family `{0}`")]
    UnknownFamily(String),

    #[error("family `{family}` is not defined in dimension {dimension}")]
    DimensionMismatch { family: String, dimension: usize },

    #[error("a polygon needs at least 3 vertices, got {0}")]
    TooFewPolygonVertices(usize),

    #[error("edge length must be positive and finite, got {0}")]
    InvalidSize(f64),

    #[error("need at least {needed} vertices, got {got}")]
    TooFewVertices { needed: usize, got: usize },

    #[error("vertices {0} and {1} coincide")]
    DuplicateVertex(usize, usize),

    #[error("point dimension {got} does not match expected dimension {expected}")]
    PointDimension { expected: usize, got: usize },

    #[error("ratio must lie in the open interval (0, 1), got {0}")]
    InvalidRatio(f64),

    #[error("invalid chaos game configuration: {0}")]
    InvalidConfig(String),

    #[error("no edge is parallel to the first axis; orient the polytope first")]
    NotAxisOriented,

    #[error("delta_parallel {delta} is smaller than the edge length {edge_length}")]
    DeltaBelowEdge { delta: f64, edge_length: f64 },

    #[error("exact delta_parallel {exact} and axis spread {axis} disagree")]
    MethodDisagreement { exact: f64, axis: f64 },

    #[error("level {level} would produce {copies} copies, above the cap of {cap}")]
    CopyCap { level: u32, copies: u128, cap: u64 },

    #[error("point set is empty")]
    EmptySet,

    #[error("copy indices must differ and be below {vertex_count}, got ({i}, {j})")]
    InvalidCopyPair { i: usize, j: usize, vertex_count: usize },

    #[error("invalid search parameters: {0}")]
    InvalidSearch(String),

    #[error("could not bracket the optimal ratio: {reason}")]
    Bracket { reason: String },

    #[error("degenerate geometry: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
