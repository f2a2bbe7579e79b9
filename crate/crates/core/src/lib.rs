//! Coherent interaction graphs: directed multigraphs with a coherence
//! relation on edges, their execution by coherent alternating walks, the
//! orthogonality test, conducts, and multiplicative linear logic proofs.

pub mod coherence;
pub mod conduct;
pub mod error;
pub mod execution;
pub mod graph;
pub mod mll;
pub mod text;

pub use coherence::{chordless_coherence, simple_coherence, Coherence, CoherentGraph};
pub use conduct::{boxplus, canonical_form, equiv_r, par_graph, tensor_graph, Generator};
pub use error::{Error, Result};
pub use execution::{
    execute, execute_simple, orthogonal, orthogonal_simple, CycleWitness, ExecutedGraph, Orthogonality, OrthogonalityTester,
    Walk,
};
pub use graph::{plug, plug3, plug3_coherent, plug_coherent, Edge, EdgeId, Graph, Plugging, Tag, TaggedEdge, VertexId};
pub use mll::{check_correctness, parse_formula, Formula, Matching, Verdict};
