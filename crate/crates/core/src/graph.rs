//! Directed multigraphs with stable vertex and edge identities, plugging and
//! delocation.
//!
//! Identities are opaque string tokens. Every collection is ordered by token,
//! so all iteration (and everything built on top of it) is deterministic.

use std::borrow::Borrow;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::coherence::CoherentGraph;
use crate::error::{Error, Result};

macro_rules! token {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(Arc<str>);

        impl $name {
            pub fn new(name: impl AsRef<str>) -> Self {
                Self(Arc::from(name.as_ref()))
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                Self::new(s)
            }
        }

        impl From<String> for $name {
            fn from(s: String) -> Self {
                Self(Arc::from(s))
            }
        }

        impl Borrow<str> for $name {
            fn borrow(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{:?}", &*self.0)
            }
        }
    };
}

token!(
    /// A vertex name, unique within a graph.
    VertexId
);
token!(
    /// An edge name, unique within a graph. Parallel edges have distinct ids.
    EdgeId
);

/// Source and target of an edge.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub src: VertexId,
    pub tgt: VertexId,
}

impl Edge {
    pub fn new(src: impl Into<VertexId>, tgt: impl Into<VertexId>) -> Self {
        Self {
            src: src.into(),
            tgt: tgt.into(),
        }
    }

    pub fn is_loop(&self) -> bool {
        self.src == self.tgt
    }

    /// True if the two edges share an endpoint, regardless of direction.
    pub fn is_incident(&self, other: &Edge) -> bool {
        self.src == other.src || self.src == other.tgt || self.tgt == other.src || self.tgt == other.tgt
    }

    pub fn touches(&self, v: &VertexId) -> bool {
        &self.src == v || &self.tgt == v
    }
}

/// A finite directed multigraph. Parallel edges and self-loops are allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<EdgeId, Edge>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// The edgeless graph on the given vertices.
    pub fn empty_on<I, V>(vertices: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: Into<VertexId>,
    {
        Self {
            vertices: vertices.into_iter().map(Into::into).collect(),
            edges: BTreeMap::new(),
        }
    }

    /// Builds a graph from `(id, src, tgt)` triples, adding endpoints as vertices.
    pub fn from_edges<I, E, V>(edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (E, V, V)>,
        E: Into<EdgeId>,
        V: Into<VertexId>,
    {
        let mut g = Self::new();
        for (id, src, tgt) in edges {
            let (src, tgt) = (src.into(), tgt.into());
            g.add_vertex(src.clone());
            g.add_vertex(tgt.clone());
            g.add_edge(id, src, tgt)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: impl Into<VertexId>) -> bool {
        self.vertices.insert(v.into())
    }

    pub fn add_edge(
        &mut self,
        id: impl Into<EdgeId>,
        src: impl Into<VertexId>,
        tgt: impl Into<VertexId>,
    ) -> Result<()> {
        let id = id.into();
        let edge = Edge::new(src, tgt);
        for v in [&edge.src, &edge.tgt] {
            if !self.vertices.contains(v) {
                return Err(Error::UnknownVertex(v.clone()));
            }
        }
        if self.edges.contains_key(&id) {
            return Err(Error::DuplicateEdge(id));
        }
        self.edges.insert(id, edge);
        Ok(())
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = (&EdgeId, &Edge)> + '_ {
        self.edges.iter()
    }

    pub fn edge_ids(&self) -> impl ExactSizeIterator<Item = &EdgeId> + '_ {
        self.edges.keys()
    }

    pub fn edge_map(&self) -> &BTreeMap<EdgeId, Edge> {
        &self.edges
    }

    pub fn edge(&self, id: &EdgeId) -> Option<&Edge> {
        self.edges.get(id)
    }

    pub fn contains_vertex(&self, v: &VertexId) -> bool {
        self.vertices.contains(v)
    }

    pub fn contains_edge(&self, id: &EdgeId) -> bool {
        self.edges.contains_key(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sorted multiset of `(src, tgt)` pairs.
    pub fn endpoint_multiset(&self) -> Vec<(VertexId, VertexId)> {
        endpoint_multiset(self.edges.values())
    }

    /// The subgraph on the same vertices keeping only the listed edges.
    pub fn restrict_edges<'a>(&self, keep: impl IntoIterator<Item = &'a EdgeId>) -> Graph {
        let edges = keep
            .into_iter()
            .filter_map(|id| self.edges.get(id).map(|e| (id.clone(), e.clone())))
            .collect();
        Graph {
            vertices: self.vertices.clone(),
            edges,
        }
    }

    /// Renames vertices along an injective map defined on every vertex.
    /// Edge ids and multiplicities are untouched.
    pub fn rename_vertices(&self, map: &BTreeMap<VertexId, VertexId>) -> Result<Graph> {
        let mut image = BTreeSet::new();
        for v in &self.vertices {
            let w = map.get(v).ok_or_else(|| Error::Delocation(format!("vertex {v} is not mapped")))?;
            if !image.insert(w.clone()) {
                return Err(Error::Delocation(format!("renaming is not injective: several vertices map to {w}")));
            }
        }
        let edges = self
            .edges
            .iter()
            .map(|(id, e)| (id.clone(), Edge::new(map[&e.src].clone(), map[&e.tgt].clone())))
            .collect();
        Ok(Graph { vertices: image, edges })
    }

    /// `G ≡ H`: same vertices and an edge bijection preserving endpoints.
    pub fn equiv(&self, other: &Graph) -> bool {
        self.vertices == other.vertices && self.endpoint_multiset() == other.endpoint_multiset()
    }
}

pub(crate) fn endpoint_multiset<'a>(edges: impl IntoIterator<Item = &'a Edge>) -> Vec<(VertexId, VertexId)> {
    let mut pairs: Vec<_> = edges.into_iter().map(|e| (e.src.clone(), e.tgt.clone())).collect();
    pairs.sort();
    pairs
}

/// Edge-id renaming produced by a coproduct.
pub(crate) type Relabel = BTreeMap<EdgeId, EdgeId>;

/// Chooses ids for the coproduct `E1 + … + En` of edge sets.
///
/// If the sets are pairwise disjoint every id is kept; otherwise every id of
/// set `i` is prefixed with `prefixes[i]` and a dot.
pub(crate) fn coproduct_ids<const N: usize>(sets: [BTreeSet<EdgeId>; N], prefixes: [&str; N]) -> [Relabel; N] {
    let total: usize = sets.iter().map(BTreeSet::len).sum();
    let union: BTreeSet<&EdgeId> = sets.iter().flatten().collect();
    let keep = union.len() == total;
    let mut out: [Relabel; N] = std::array::from_fn(|_| BTreeMap::new());
    for (i, set) in sets.iter().enumerate() {
        for id in set {
            let new = if keep {
                id.clone()
            } else {
                EdgeId::from(format!("{}.{}", prefixes[i], id))
            };
            out[i].insert(id.clone(), new);
        }
    }
    out
}

/// Component index of an edge inside a plugging.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tag(pub u8);

impl Tag {
    pub const LEFT: Tag = Tag(0);
    pub const RIGHT: Tag = Tag(1);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An edge of a plugging: the component it came from and its original id.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TaggedEdge {
    pub tag: Tag,
    pub id: EdgeId,
}

impl TaggedEdge {
    pub fn new(tag: Tag, id: impl Into<EdgeId>) -> Self {
        Self { tag, id: id.into() }
    }
}

impl fmt::Display for TaggedEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.tag, self.id)
    }
}

/// `G₀ □ G₁ (□ G₂)`: the union of the vertex sets with the edge sets kept
/// apart by tag.
///
/// Components are coherent graphs; the coherence of the plugging is the `&`
/// of theirs (edges from different components are always coherent). Plain
/// graphs are plugged with the full coherence.
#[derive(Clone, Debug)]
pub struct Plugging {
    vertices: BTreeSet<VertexId>,
    components: Vec<CoherentGraph>,
}

impl Plugging {
    pub fn from_components(components: Vec<CoherentGraph>) -> Self {
        assert!(components.len() <= u8::MAX as usize);
        let vertices = components
            .iter()
            .flat_map(|c| c.graph().vertices().iter().cloned())
            .collect();
        Self { vertices, components }
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn components(&self) -> &[CoherentGraph] {
        &self.components
    }

    pub fn component(&self, tag: Tag) -> &CoherentGraph {
        &self.components[tag.index()]
    }

    pub fn edge(&self, e: &TaggedEdge) -> Option<&Edge> {
        self.components.get(e.tag.index())?.graph().edge(&e.id)
    }

    /// All edges in `(tag, id)` order.
    pub fn edges(&self) -> impl Iterator<Item = (TaggedEdge, &Edge)> + '_ {
        self.components.iter().enumerate().flat_map(|(i, c)| {
            c.graph()
                .edges()
                .map(move |(id, e)| (TaggedEdge::new(Tag(i as u8), id.clone()), e))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.components.iter().map(|c| c.graph().edge_count()).sum()
    }

    /// Coherence in the plugging: `&` of the components' relations.
    pub fn coherent(&self, a: &TaggedEdge, b: &TaggedEdge) -> bool {
        a.tag != b.tag || self.components[a.tag.index()].coherence().coherent(&a.id, &b.id)
    }

    /// The underlying multigraph; edge ids are `tag:id`.
    pub fn graph(&self) -> Graph {
        let mut g = Graph {
            vertices: self.vertices.clone(),
            edges: BTreeMap::new(),
        };
        for (te, e) in self.edges() {
            g.edges.insert(EdgeId::from(te.to_string()), e.clone());
        }
        g
    }

    /// Provenance of each edge of [`Plugging::graph`].
    pub fn provenance(&self) -> BTreeMap<EdgeId, TaggedEdge> {
        self.edges()
            .map(|(te, _)| (EdgeId::from(te.to_string()), te))
            .collect()
    }

    /// The plugging of the selected components only, retagged `0..` in the
    /// given order.
    pub fn restrict(&self, tags: &[Tag]) -> Plugging {
        Plugging::from_components(tags.iter().map(|t| self.component(*t).clone()).collect())
    }
}

/// `G □ H` for plain graphs (full coherence on each side).
pub fn plug(g: &Graph, h: &Graph) -> Plugging {
    Plugging::from_components(vec![CoherentGraph::full(g.clone()), CoherentGraph::full(h.clone())])
}

/// `F □ G □ H` for plain graphs.
pub fn plug3(f: &Graph, g: &Graph, h: &Graph) -> Plugging {
    Plugging::from_components(vec![
        CoherentGraph::full(f.clone()),
        CoherentGraph::full(g.clone()),
        CoherentGraph::full(h.clone()),
    ])
}

/// `G □ H` for coherent graphs.
pub fn plug_coherent(g: &CoherentGraph, h: &CoherentGraph) -> Plugging {
    Plugging::from_components(vec![g.clone(), h.clone()])
}

/// `F □ G □ H` for coherent graphs.
pub fn plug3_coherent(f: &CoherentGraph, g: &CoherentGraph, h: &CoherentGraph) -> Plugging {
    Plugging::from_components(vec![f.clone(), g.clone(), h.clone()])
}
