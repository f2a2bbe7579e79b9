//! Seeded random graphs, coherences, formulas and matchings.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use cig_core::coherence::{chordless_coherence, simple_coherence};
use cig_core::mll::{Formula, Matching};
use cig_core::{Coherence, CoherentGraph, EdgeId, Graph, VertexId};

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape of the random multigraphs.
#[derive(Clone, Copy, Debug)]
pub struct GraphShape {
    pub max_edges: usize,
    pub loops: bool,
    /// Probability that an edge also gets its reverse.
    pub mirror: f64,
}

impl GraphShape {
    pub fn new(max_edges: usize, loops: bool) -> Self {
        GraphShape {
            max_edges,
            loops,
            mirror: 0.0,
        }
    }
}

pub fn vertex_names(prefix: &str, n: usize) -> Vec<VertexId> {
    (0..n).map(|i| VertexId::from(format!("{prefix}{i}"))).collect()
}

/// A multigraph on exactly `vertices`, with between 0 and `max_edges`
/// uniformly placed edges named `{prefix}0`, `{prefix}1`, …, reverse edges
/// included.
pub fn random_graph(rng: &mut Rng8, vertices: &[VertexId], shape: GraphShape, prefix: &str) -> Graph {
    let mut g = Graph::empty_on(vertices.iter().cloned());
    if vertices.is_empty() || (vertices.len() == 1 && !shape.loops) {
        return g;
    }
    let m = rng.gen_range(0..=shape.max_edges);
    let mut i = 0;
    while i < m {
        let (s, t) = loop {
            let s = vertices.choose(rng).unwrap();
            let t = vertices.choose(rng).unwrap();
            if shape.loops || s != t {
                break (s, t);
            }
        };
        g.add_edge(format!("{prefix}{i}"), s.clone(), t.clone()).unwrap();
        i += 1;
        if i < m && rng.gen_bool(shape.mirror) {
            g.add_edge(format!("{prefix}{i}"), t.clone(), s.clone()).unwrap();
            i += 1;
        }
    }
    g
}

/// Edges drawn only between the given vertex pairs, in a random direction;
/// vertices are those of the pairs plus `vertices`.
pub fn random_graph_on_pairs(
    rng: &mut Rng8,
    vertices: &[VertexId],
    pairs: &[(VertexId, VertexId)],
    shape: GraphShape,
    prefix: &str,
) -> Graph {
    let mut g = Graph::empty_on(vertices.iter().cloned());
    if pairs.is_empty() {
        return g;
    }
    let m = rng.gen_range(0..=shape.max_edges);
    let mut i = 0;
    while i < m {
        let (u, v) = pairs.choose(rng).unwrap();
        let (s, t) = if rng.gen_bool(0.5) { (u, v) } else { (v, u) };
        g.add_edge(format!("{prefix}{i}"), s.clone(), t.clone()).unwrap();
        i += 1;
        if i < m && rng.gen_bool(shape.mirror) {
            g.add_edge(format!("{prefix}{i}"), t.clone(), s.clone()).unwrap();
            i += 1;
        }
    }
    g
}

/// Each pair of distinct edges is coherent with probability `p`.
pub fn random_coherence(rng: &mut Rng8, g: &Graph, p: f64) -> Coherence {
    let ids: Vec<EdgeId> = g.edge_ids().cloned().collect();
    let mut c = Coherence::discrete(ids.iter().cloned());
    for (i, a) in ids.iter().enumerate() {
        for b in &ids[i + 1..] {
            if rng.gen_bool(p) {
                c.add_pair(a.clone(), b.clone()).unwrap();
            }
        }
    }
    c
}

/// A random sub-relation of the simple coherence, so the result is simple.
pub fn random_simple_coherence(rng: &mut Rng8, g: &Graph, p: f64) -> Coherence {
    let simple = simple_coherence(g);
    let mut c = Coherence::discrete(g.edge_ids().cloned());
    for (a, b) in simple.pairs() {
        if rng.gen_bool(p) {
            c.add_pair(a.clone(), b.clone()).unwrap();
        }
    }
    c
}

pub fn random_coherent(rng: &mut Rng8, vertices: &[VertexId], shape: GraphShape, prefix: &str, p: f64) -> CoherentGraph {
    let g = random_graph(rng, vertices, shape, prefix);
    let c = random_coherence(rng, &g, p);
    CoherentGraph::new(g, c).unwrap()
}

pub fn random_chordless(rng: &mut Rng8, vertices: &[VertexId], shape: GraphShape, prefix: &str) -> CoherentGraph {
    let g = random_graph(rng, vertices, shape, prefix);
    let c = chordless_coherence(&g);
    CoherentGraph::new(g, c).unwrap()
}

/// A uniformly random formula tree with `n` leaves, all the atom `X`.
pub fn random_shape(rng: &mut Rng8, n: usize) -> Formula {
    if n == 1 {
        return Formula::atom("X");
    }
    let left = rng.gen_range(1..n);
    let (a, b) = (random_shape(rng, left), random_shape(rng, n - left));
    if rng.gen_bool(0.5) {
        Formula::tensor(a, b)
    } else {
        Formula::par(a, b)
    }
}

/// A uniformly random perfect matching of `0..n` (`n` even).
pub fn random_pairs(rng: &mut Rng8, n: usize) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut pairs: Vec<(usize, usize)> = order.chunks(2).map(|c| (c[0].min(c[1]), c[0].max(c[1]))).collect();
    pairs.sort();
    pairs
}

/// A random perfect matching on the given vertices.
pub fn random_matching(rng: &mut Rng8, vertices: &[VertexId]) -> Matching {
    let pairs = random_pairs(rng, vertices.len());
    Matching::new(pairs.into_iter().map(|(i, j)| (vertices[i].clone(), vertices[j].clone()))).unwrap()
}
