use thiserror::Error;

use crate::execution::Walk;
use crate::graph::{EdgeId, VertexId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(VertexId),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(EdgeId),
    #[error("delocation error: {0}")]
    Delocation(String),
    #[error("`{0}` is not in the web")]
    Web(EdgeId),
    #[error("coherence web differs from the edge set")]
    WebMismatch,
    #[error("vertex sets differ: {0}")]
    Interface(String),
    #[error("vertex sets overlap on {0:?}; delocate one side first")]
    Location(Vec<VertexId>),
    #[error("execution diverges: the coherent alternating walk {0} repeats an edge and can be pumped")]
    DivergentExecution(Box<Walk>),
    #[error("side condition fails, coherent alternating cycle {0}")]
    NotOrthogonal(Box<Walk>),
    #[error("alternating cycle through {0:?}")]
    Cycle(Vec<VertexId>),
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("bad links: {0}")]
    Link(String),
    #[error("leaves {0} and {1} are linked but their labels are not dual")]
    Duality(usize, usize),
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
}
