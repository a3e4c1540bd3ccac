use thiserror::Error;

use crate::model::Edge;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised while reading a graph document.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("malformed graph document: {0}")]
    Malformed(String),
    #[error("vertex {vertex}: invalid coordinate {text:?}")]
    BadCoordinate { vertex: usize, text: String },
    #[error("edge ({0}, {1}) references a vertex outside 0..{2}")]
    IndexOutOfRange(usize, usize, usize),
    #[error("edge ({0}, {0}) is a self-loop")]
    SelfLoop(usize),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("red edge {0} is not in the edge set")]
    RedEdgeNotInEdges(Edge),
    #[error("claimed deviation references {0}, which is not a red edge")]
    ClaimNotRed(Edge),
    #[error("label list has {labels} entries for {vertices} vertices")]
    LabelCount { labels: usize, vertices: usize },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("degenerate segment: endpoints closer than tolerance")]
    DegenerateSegment,
    #[error("point sets differ in size ({0} vs {1}) or have fewer than 2 points")]
    SizeMismatch(usize, usize),
    #[error("graph needs at least {needed} vertices, has {actual}")]
    TooFewVertices { needed: usize, actual: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("edge {0} has zero length")]
    ZeroLengthEdge(Edge),
    #[error("relaxation diverged (objective is not finite)")]
    Divergence,
    #[error("drawing has {0} crossing edge pairs; outer face is undefined")]
    CrossingDrawing(usize),
    #[error("unknown corpus id {0:?}")]
    UnknownId(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
