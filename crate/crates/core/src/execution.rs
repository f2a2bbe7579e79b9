//! Coherent alternating walks, execution and orthogonality.
//!
//! A walk in a plugging is *alternating* when consecutive edges come from
//! different components, and *coherent* when its edges form a clique. Closed
//! walks (cycles) must also alternate across the wrap point, so the last and
//! first edges come from different components.
//!
//! All searches run on a compiled [`Arena`] where edges are numbered in
//! `(tag, id)` order; depth-first expansion follows that order, so every
//! result is deterministic.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::coherence::{Coherence, CoherentGraph};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Plugging, Tag, TaggedEdge, VertexId};

/// A walk `v0 -e1-> v1 … -en-> vn` in a plugging.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Walk {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<TaggedEdge>,
    pub closed: bool,
}

impl Walk {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn start(&self) -> &VertexId {
        &self.vertices[0]
    }

    pub fn end(&self) -> &VertexId {
        self.vertices.last().unwrap()
    }

    /// No vertex visited twice. For a cycle the closing return to `v0` does
    /// not count.
    pub fn is_simple(&self) -> bool {
        let visited = if self.closed {
            &self.vertices[..self.vertices.len() - 1]
        } else {
            &self.vertices[..]
        };
        let distinct: BTreeSet<_> = visited.iter().collect();
        distinct.len() == visited.len()
    }

    /// Canonical identity of an executed edge: `[t:id,t:id,…]`.
    pub fn encode(&self) -> String {
        let parts: Vec<String> = self.edges.iter().map(ToString::to_string).collect();
        format!("[{}]", parts.join(","))
    }
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.vertices[0])?;
        for (e, v) in self.edges.iter().zip(&self.vertices[1..]) {
            write!(f, " -{e}-> {v}")?;
        }
        Ok(())
    }
}

/// A coherent, cyclically alternating closed walk: the reason two graphs are
/// not orthogonal.
pub type CycleWitness = Walk;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Orthogonality {
    Orthogonal,
    NotOrthogonal(CycleWitness),
}

impl Orthogonality {
    pub fn is_orthogonal(&self) -> bool {
        matches!(self, Orthogonality::Orthogonal)
    }

    pub fn witness(&self) -> Option<&CycleWitness> {
        match self {
            Orthogonality::Orthogonal => None,
            Orthogonality::NotOrthogonal(w) => Some(w),
        }
    }
}

/// The result of `G :: H`: a coherent graph whose edges remember the walk
/// they come from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExecutedGraph {
    graph: CoherentGraph,
    provenance: BTreeMap<EdgeId, Walk>,
}

impl ExecutedGraph {
    pub fn graph(&self) -> &CoherentGraph {
        &self.graph
    }

    pub fn into_graph(self) -> CoherentGraph {
        self.graph
    }

    pub fn provenance(&self) -> &BTreeMap<EdgeId, Walk> {
        &self.provenance
    }

    pub fn walk(&self, id: &EdgeId) -> Option<&Walk> {
        self.provenance.get(id)
    }
}

/// A plugging compiled to dense indices.
#[derive(Clone)]
pub(crate) struct Arena<'a> {
    vertex_ids: Vec<&'a VertexId>,
    labels: Vec<(Tag, &'a EdgeId)>,
    src: Vec<usize>,
    tgt: Vec<usize>,
    tag: Vec<u8>,
    out: Vec<Vec<usize>>,
    coh: Vec<FixedBitSet>,
    components: u8,
}

impl<'a> Arena<'a> {
    pub(crate) fn new(p: &'a Plugging) -> Self {
        let parts: Vec<&CoherentGraph> = p.components().iter().collect();
        Self::from_components(&parts)
    }

    pub(crate) fn from_components(parts: &[&'a CoherentGraph]) -> Self {
        let vertex_ids: Vec<&VertexId> = if let [g, h] = parts {
            g.vertices().union(h.vertices()).collect()
        } else {
            let all: BTreeSet<&VertexId> = parts.iter().flat_map(|c| c.vertices()).collect();
            all.into_iter().collect()
        };
        let mut arena = Arena::on(vertex_ids);
        for c in parts {
            arena.push_component(c);
        }
        arena
    }

    fn on(vertex_ids: Vec<&'a VertexId>) -> Self {
        Arena {
            labels: Vec::new(),
            src: Vec::new(),
            tgt: Vec::new(),
            tag: Vec::new(),
            out: vec![Vec::new(); vertex_ids.len()],
            coh: Vec::new(),
            components: 0,
            vertex_ids,
        }
    }

    /// Appends a component on already known vertices. Its edges are coherent
    /// with every edge of the other components.
    fn push_component(&mut self, c: &'a CoherentGraph) {
        let tag = self.components;
        self.components += 1;
        let offset = self.labels.len();
        let m = offset + c.graph().edge_count();
        for row in &mut self.coh {
            row.grow(m);
            row.insert_range(offset..m);
        }
        for (id, e) in c.graph().edges() {
            let k = self.labels.len();
            self.labels.push((Tag(tag), id));
            let u = self.vertex_ids.binary_search(&&e.src).unwrap();
            let v = self.vertex_ids.binary_search(&&e.tgt).unwrap();
            self.src.push(u);
            self.tgt.push(v);
            self.tag.push(tag);
            self.out[u].push(k);
            let mut row = FixedBitSet::with_capacity(m);
            row.insert_range(..offset);
            row.extend(c.coherence().rows()[k - offset].ones().map(|j| offset + j));
            self.coh.push(row);
        }
    }

    fn edge_count(&self) -> usize {
        self.labels.len()
    }

    fn vertex_set(&self, vs: &BTreeSet<VertexId>) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.vertex_ids.len());
        for (i, v) in self.vertex_ids.iter().enumerate() {
            if vs.contains(*v) {
                set.insert(i);
            }
        }
        set
    }

    fn label(&self, e: usize) -> TaggedEdge {
        let (tag, id) = self.labels[e];
        TaggedEdge::new(tag, id.clone())
    }

    fn walk(&self, path: &[usize], closed: bool) -> Walk {
        let mut vertices = Vec::with_capacity(path.len() + 1);
        vertices.push(self.vertex_ids[self.src[path[0]]].clone());
        vertices.extend(path.iter().map(|&e| self.vertex_ids[self.tgt[e]].clone()));
        Walk {
            vertices,
            edges: path.iter().map(|&e| self.label(e)).collect(),
            closed,
        }
    }

    /// Edges coherent with every edge of `path`.
    fn allowed(&self, path: &[usize]) -> FixedBitSet {
        let mut allowed = FixedBitSet::with_capacity(self.edge_count());
        allowed.insert_range(..);
        for &e in path {
            allowed.intersect_with(&self.coh[e]);
        }
        allowed
    }
}

/// A graph compiled once and tested for orthogonality against many others.
pub struct OrthogonalityTester<'g> {
    test: &'g CoherentGraph,
    base: Arena<'g>,
}

impl<'g> OrthogonalityTester<'g> {
    pub fn new(test: &'g CoherentGraph) -> Self {
        let mut base = Arena::on(test.vertices().iter().collect());
        base.push_component(test);
        Self { test, base }
    }

    /// Same answer as `orthogonal(test, h)`.
    pub fn check(&self, h: &CoherentGraph) -> Result<Orthogonality> {
        same_vertices(self.test, h)?;
        let mut arena = self.base.clone();
        arena.push_component(h);
        Ok(match shortest_cycle_in(&arena, false) {
            None => Orthogonality::Orthogonal,
            Some(w) => Orthogonality::NotOrthogonal(w),
        })
    }
}

type State = (usize, u8, FixedBitSet);

struct WalkSearch<'a> {
    arena: &'a Arena<'a>,
    boundary: FixedBitSet,
    simple: bool,
    path: Vec<usize>,
    used: FixedBitSet,
    visited: FixedBitSet,
    allowed: Vec<FixedBitSet>,
    found: Vec<Vec<usize>>,
    dead: HashSet<State>,
}

impl<'a> WalkSearch<'a> {
    fn new(arena: &'a Arena<'a>, boundary: FixedBitSet, simple: bool) -> Self {
        let m = arena.edge_count();
        let mut all = FixedBitSet::with_capacity(m);
        all.insert_range(..);
        WalkSearch {
            arena,
            boundary,
            simple,
            path: Vec::new(),
            used: FixedBitSet::with_capacity(m),
            visited: FixedBitSet::with_capacity(arena.vertex_ids.len()),
            allowed: vec![all],
            found: Vec::new(),
            dead: HashSet::new(),
        }
    }

    fn run(mut self) -> Result<Vec<Vec<usize>>> {
        let starts: Vec<usize> = self.boundary.ones().collect();
        for v in starts {
            self.visited.insert(v);
            self.extend(v, None)?;
            self.visited.set(v, false);
        }
        Ok(self.found)
    }

    fn extend(&mut self, v: usize, last: Option<u8>) -> Result<()> {
        let arena = self.arena;
        for &e in &arena.out[v] {
            if Some(arena.tag[e]) == last {
                continue;
            }
            let w = arena.tgt[e];
            if self.simple && self.visited.contains(w) {
                continue;
            }
            if self.used.contains(e) {
                // Re-entering a used edge closes a coherent alternating loop;
                // it is pumpable iff the walk can still reach the boundary.
                if self.completable(w, arena.tag[e], self.used.clone()) {
                    let mut path = self.path.clone();
                    path.push(e);
                    return Err(Error::DivergentExecution(Box::new(arena.walk(&path, false))));
                }
                continue;
            }
            if !self.allowed.last().unwrap().contains(e) {
                continue;
            }
            let mut next = self.allowed.last().unwrap().clone();
            next.intersect_with(&arena.coh[e]);
            self.allowed.push(next);
            self.path.push(e);
            self.used.insert(e);
            if self.simple {
                self.visited.insert(w);
            }
            if self.boundary.contains(w) {
                self.found.push(self.path.clone());
            }
            let r = self.extend(w, Some(arena.tag[e]));
            if self.simple {
                self.visited.set(w, false);
            }
            self.used.set(e, false);
            self.path.pop();
            self.allowed.pop();
            r?;
        }
        Ok(())
    }

    /// Can a coherent alternating walk continue from `(v, last)` with the
    /// edges `used` already taken (repeats allowed) and reach the boundary?
    fn completable(&mut self, v: usize, last: u8, used: FixedBitSet) -> bool {
        let arena = self.arena;
        if self.boundary.contains(v) {
            return true;
        }
        let mut seen: HashSet<State> = HashSet::new();
        let mut stack = vec![(v, last, used)];
        while let Some(state) = stack.pop() {
            if self.boundary.contains(state.0) {
                return true;
            }
            if self.dead.contains(&state) || seen.contains(&state) {
                continue;
            }
            let (u, tag, used) = &state;
            let path: Vec<usize> = used.ones().collect();
            let allowed = arena.allowed(&path);
            for &e in &arena.out[*u] {
                if arena.tag[e] == *tag || !allowed.contains(e) {
                    continue;
                }
                let mut next = used.clone();
                next.insert(e);
                stack.push((arena.tgt[e], arena.tag[e], next));
            }
            seen.insert(state);
        }
        self.dead.extend(seen);
        false
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum CycleMode {
    All,
    Shortest,
}

struct CycleSearch<'a> {
    arena: &'a Arena<'a>,
    simple: bool,
    mode: CycleMode,
    start: usize,
    path: Vec<usize>,
    used: FixedBitSet,
    visited: FixedBitSet,
    allowed: Vec<FixedBitSet>,
    found: Vec<Vec<usize>>,
    best: usize,
}

impl<'a> CycleSearch<'a> {
    fn run(arena: &'a Arena<'a>, simple: bool, mode: CycleMode) -> Vec<Vec<usize>> {
        let m = arena.edge_count();
        let mut search = CycleSearch {
            arena,
            simple,
            mode,
            start: 0,
            path: Vec::new(),
            used: FixedBitSet::with_capacity(m),
            visited: FixedBitSet::with_capacity(arena.vertex_ids.len()),
            allowed: vec![FixedBitSet::with_capacity(m); m + 1],
            found: Vec::new(),
            best: usize::MAX,
        };
        for start in 0..m {
            // the smallest edge of a cycle is its first edge
            if simple && arena.src[start] == arena.tgt[start] {
                continue;
            }
            search.start = start;
            search.path = vec![start];
            search.used.clear();
            search.used.insert(start);
            search.visited.clear();
            search.visited.insert(arena.src[start]);
            search.visited.insert(arena.tgt[start]);
            search.allowed[0].clone_from(&arena.coh[start]);
            search.extend(arena.tgt[start]);
        }
        search.found
    }

    fn extend(&mut self, v: usize) {
        let arena = self.arena;
        let v0 = arena.src[self.start];
        let last = arena.tag[*self.path.last().unwrap()];
        for &e in &arena.out[v] {
            if e <= self.start || arena.tag[e] == last || self.used.contains(e) {
                continue;
            }
            let depth = self.path.len();
            if !self.allowed[depth - 1].contains(e) {
                continue;
            }
            if self.mode == CycleMode::Shortest && self.path.len() + 1 >= self.best {
                return;
            }
            let w = arena.tgt[e];
            let closes = w == v0 && arena.tag[e] != arena.tag[self.start];
            if self.simple && self.visited.contains(w) && w != v0 {
                continue;
            }
            self.path.push(e);
            if closes {
                if self.mode == CycleMode::Shortest {
                    self.best = self.path.len();
                    self.found = vec![self.path.clone()];
                    self.path.pop();
                    continue;
                }
                self.found.push(self.path.clone());
            }
            if self.simple && w == v0 {
                self.path.pop();
                continue;
            }
            let (done, next) = self.allowed.split_at_mut(depth);
            next[0].clone_from(&done[depth - 1]);
            next[0].intersect_with(&arena.coh[e]);
            self.used.insert(e);
            let fresh = !self.visited.contains(w);
            self.visited.insert(w);
            self.extend(w);
            if fresh {
                self.visited.set(w, false);
            }
            self.used.set(e, false);
            self.path.pop();
        }
    }
}

/// Every coherent alternating walk (at least one edge) starting and ending in
/// `boundary`, sorted.
///
/// Walks never repeat an edge. If some coherent alternating walk re-enters an
/// edge it already used and can still reach the boundary, the loop between
/// the two occurrences can be pumped into infinitely many coherent walks and
/// the call fails with [`Error::DivergentExecution`].
pub fn coherent_walks(p: &Plugging, boundary: &BTreeSet<VertexId>) -> Result<Vec<Walk>> {
    walks(p, boundary, false)
}

/// As [`coherent_walks`], keeping only walks that never visit a vertex twice.
/// Never diverges.
pub fn simple_coherent_walks(p: &Plugging, boundary: &BTreeSet<VertexId>) -> Vec<Walk> {
    walks(p, boundary, true).expect("simple walks cannot repeat edges")
}

fn walks(p: &Plugging, boundary: &BTreeSet<VertexId>, simple: bool) -> Result<Vec<Walk>> {
    let arena = Arena::new(p);
    let paths = WalkSearch::new(&arena, arena.vertex_set(boundary), simple).run()?;
    let mut out: Vec<Walk> = paths.iter().map(|path| arena.walk(path, false)).collect();
    out.sort();
    Ok(out)
}

/// Every coherent cyclically-alternating closed walk without repeated edges,
/// each rotated to start at its smallest edge. Both orientations of a cycle
/// are distinct walks.
pub fn coherent_cycles(p: &Plugging) -> Vec<Walk> {
    cycles(p, false)
}

/// The simple ones among [`coherent_cycles`].
pub fn simple_coherent_cycles(p: &Plugging) -> Vec<Walk> {
    cycles(p, true)
}

fn cycles(p: &Plugging, simple: bool) -> Vec<Walk> {
    let arena = Arena::new(p);
    let mut out: Vec<Walk> = CycleSearch::run(&arena, simple, CycleMode::All)
        .iter()
        .map(|path| arena.walk(path, true))
        .collect();
    out.sort();
    out
}

/// A shortest coherent cyclically-alternating closed walk, if any. Among the
/// shortest, the lexicographically first edge sequence is returned.
///
/// Restricting to walks without repeated edges loses nothing: if a coherent
/// cycle repeats an edge, the stretch between the two occurrences is a
/// shorter coherent cycle.
pub fn find_coherent_cycle(p: &Plugging) -> Option<CycleWitness> {
    shortest_cycle(p, false)
}

pub fn find_simple_coherent_cycle(p: &Plugging) -> Option<CycleWitness> {
    shortest_cycle(p, true)
}

fn shortest_cycle(p: &Plugging, simple: bool) -> Option<CycleWitness> {
    shortest_cycle_in(&Arena::new(p), simple)
}

fn shortest_cycle_in(arena: &Arena<'_>, simple: bool) -> Option<CycleWitness> {
    CycleSearch::run(arena, simple, CycleMode::Shortest)
        .pop()
        .map(|path| arena.walk(&path, true))
}

/// `V(G) △ V(H)`.
pub fn symmetric_difference(a: &BTreeSet<VertexId>, b: &BTreeSet<VertexId>) -> BTreeSet<VertexId> {
    a.symmetric_difference(b).cloned().collect()
}

/// `G :: H`: one edge per coherent alternating walk between vertices of
/// `V(G) △ V(H)`, coherent when the walks are mutually coherent.
pub fn execute(g: &CoherentGraph, h: &CoherentGraph) -> Result<ExecutedGraph> {
    execute_with(g, h, false)
}

/// `G ::ₛ H`: like [`execute`] but only vertex-simple walks contribute.
pub fn execute_simple(g: &CoherentGraph, h: &CoherentGraph) -> ExecutedGraph {
    execute_with(g, h, true).expect("simple execution cannot diverge")
}

fn execute_with(g: &CoherentGraph, h: &CoherentGraph, simple: bool) -> Result<ExecutedGraph> {
    let boundary = symmetric_difference(g.vertices(), h.vertices());
    let arena = Arena::from_components(&[g, h]);
    let mut paths = WalkSearch::new(&arena, arena.vertex_set(&boundary), simple).run()?;
    paths.sort_by(|a, b| {
        let la = a.iter().map(|&e| arena.labels[e]);
        let lb = b.iter().map(|&e| arena.labels[e]);
        la.cmp(lb)
    });

    let mut graph = Graph::empty_on(boundary.iter().cloned());
    let mut provenance = BTreeMap::new();
    let mut ids = Vec::with_capacity(paths.len());
    for path in &paths {
        let walk = arena.walk(path, false);
        let id = EdgeId::from(walk.encode());
        graph.add_edge(id.clone(), walk.start().clone(), walk.end().clone())?;
        provenance.insert(id.clone(), walk);
        ids.push(id);
    }
    let allowed: Vec<FixedBitSet> = paths.iter().map(|p| arena.allowed(p)).collect();
    let mut coh = Coherence::discrete(ids.iter().cloned());
    for i in 0..paths.len() {
        for j in i + 1..paths.len() {
            if paths[j].iter().all(|&e| allowed[i].contains(e)) {
                coh.add_pair(ids[i].clone(), ids[j].clone())?;
            }
        }
    }
    Ok(ExecutedGraph {
        graph: CoherentGraph::new_unchecked(graph, coh),
        provenance,
    })
}

fn same_vertices(g: &CoherentGraph, h: &CoherentGraph) -> Result<()> {
    if g.vertices() != h.vertices() {
        let diff: Vec<String> = symmetric_difference(g.vertices(), h.vertices())
            .iter()
            .map(ToString::to_string)
            .collect();
        return Err(Error::Interface(format!("vertices not shared by both graphs: {}", diff.join(", "))));
    }
    Ok(())
}

/// `G ⊥ H`: no coherent cyclically-alternating cycle in `G □ H`. Requires
/// `V(G) = V(H)`. When not orthogonal, a shortest witness is returned.
pub fn orthogonal(g: &CoherentGraph, h: &CoherentGraph) -> Result<Orthogonality> {
    same_vertices(g, h)?;
    Ok(match shortest_cycle_in(&Arena::from_components(&[g, h]), false) {
        None => Orthogonality::Orthogonal,
        Some(w) => Orthogonality::NotOrthogonal(w),
    })
}

/// `G ⊥ₛ H`: no coherent, simple, cyclically-alternating cycle in `G □ H`.
pub fn orthogonal_simple(g: &CoherentGraph, h: &CoherentGraph) -> Result<Orthogonality> {
    same_vertices(g, h)?;
    Ok(match shortest_cycle_in(&Arena::from_components(&[g, h]), true) {
        None => Orthogonality::Orthogonal,
        Some(w) => Orthogonality::NotOrthogonal(w),
    })
}

/// Checks a claimed cycle directly against the plugging: endpoints chain,
/// tags alternate cyclically, no edge repeats and all edges are pairwise
/// coherent.
pub fn check_cycle(p: &Plugging, w: &Walk) -> std::result::Result<(), String> {
    check_walk(p, w)?;
    if !w.closed || w.start() != w.end() {
        return Err("walk is not closed".into());
    }
    if w.edges.first().unwrap().tag == w.edges.last().unwrap().tag {
        return Err("last and first edges come from the same component".into());
    }
    let distinct: BTreeSet<_> = w.edges.iter().collect();
    if distinct.len() != w.edges.len() {
        return Err("an edge is repeated".into());
    }
    Ok(())
}

/// Checks chaining, alternation and coherence of a walk.
pub fn check_walk(p: &Plugging, w: &Walk) -> std::result::Result<(), String> {
    if w.edges.is_empty() || w.vertices.len() != w.edges.len() + 1 {
        return Err("malformed walk".into());
    }
    for (j, te) in w.edges.iter().enumerate() {
        let e = p.edge(te).ok_or_else(|| format!("unknown edge {te}"))?;
        if e.src != w.vertices[j] || e.tgt != w.vertices[j + 1] {
            return Err(format!("edge {te} does not join {} to {}", w.vertices[j], w.vertices[j + 1]));
        }
        if j > 0 && w.edges[j - 1].tag == te.tag {
            return Err(format!("edges {} and {te} come from the same component", w.edges[j - 1]));
        }
    }
    for (i, a) in w.edges.iter().enumerate() {
        for b in &w.edges[i + 1..] {
            if !p.coherent(a, b) {
                return Err(format!("edges {a} and {b} are incoherent"));
            }
        }
    }
    Ok(())
}

/// A cycle is chordless when the plugging has no edge between two of its
/// vertices that are not consecutive on it.
pub fn is_chordless(p: &Plugging, w: &Walk) -> bool {
    let n = w.len();
    let cyc = &w.vertices[..n];
    let position = |v: &VertexId| cyc.iter().position(|x| x == v);
    p.edges().all(|(_, e)| match (position(&e.src), position(&e.tgt)) {
        (Some(i), Some(j)) => {
            let d = i.abs_diff(j);
            i == j || d == 1 || d == n - 1
        }
        _ => true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{plug_coherent, Graph};

    fn graph(edges: &[(&str, &str, &str)]) -> Graph {
        Graph::from_edges(edges.iter().copied()).unwrap()
    }

    fn full(edges: &[(&str, &str, &str)]) -> CoherentGraph {
        CoherentGraph::full(graph(edges))
    }

    fn coherent(edges: &[(&str, &str, &str)], pairs: &[(&str, &str)]) -> CoherentGraph {
        let g = graph(edges);
        let coh = Coherence::from_pairs(
            g.edge_ids().cloned(),
            pairs.iter().map(|(a, b)| (EdgeId::from(*a), EdgeId::from(*b))),
        )
        .unwrap();
        CoherentGraph::new(g, coh).unwrap()
    }

    fn vset(names: &[&str]) -> BTreeSet<VertexId> {
        names.iter().map(|s| VertexId::from(*s)).collect()
    }

    #[test]
    fn single_through_walk() {
        let p = plug_coherent(&full(&[("e", "a", "m")]), &full(&[("f", "m", "b")]));
        let walks = coherent_walks(&p, &vset(&["a", "b"])).unwrap();
        assert_eq!(walks.len(), 1);
        assert_eq!(walks[0].to_string(), "a -0:e-> m -1:f-> b");
    }

    #[test]
    fn incoherent_through_walk_is_dropped() {
        let g = full(&[("x", "x", "m1"), ("mid", "m2", "m3"), ("y", "m4", "y")]);
        let h = coherent(&[("red", "m1", "m2"), ("blue", "m3", "m4")], &[]);
        let p = plug_coherent(&g, &h);
        assert!(coherent_walks(&p, &vset(&["x", "y"])).unwrap().is_empty());
        // with red ∘ blue the walk exists
        let h = coherent(&[("red", "m1", "m2"), ("blue", "m3", "m4")], &[("red", "blue")]);
        assert_eq!(coherent_walks(&plug_coherent(&g, &h), &vset(&["x", "y"])).unwrap().len(), 1);
    }

    #[test]
    fn pumpable_cycle_diverges() {
        // π = a → u, C = u ⇄ w alternating, π' = u → b
        let g = full(&[("in", "a", "u"), ("loop", "w", "u")]);
        let h = full(&[("uw", "u", "w"), ("out", "u", "b")]);
        let r = execute(&g, &h);
        assert!(matches!(r, Err(Error::DivergentExecution(_))), "{r:?}");
    }

    #[test]
    fn dead_end_cycle_does_not_diverge() {
        // the cycle u ⇄ w is reachable from a but no walk leaves it towards b
        let g = full(&[("in", "a", "u"), ("loop", "w", "u")]);
        let h = full(&[("uw", "u", "w"), ("hb", "z", "b")]);
        let x = execute(&g, &h).unwrap();
        // only the isolated boundary edge z → b survives
        let ids: Vec<_> = x.graph().graph().edge_ids().map(|e| e.as_str().to_string()).collect();
        assert_eq!(ids, ["[1:hb]"]);
    }

    #[test]
    fn incoherent_cycle_does_not_diverge() {
        let g = coherent(&[("in", "a", "u"), ("loop", "w", "u"), ("out", "u", "b")], &[("in", "out")]);
        let h = full(&[("uw", "u", "w"), ("back", "w", "u")]);
        // `loop` is incoherent with both `in` and `out`, so the cycle cannot be entered coherently
        let x = execute(&g, &h).unwrap();
        assert!(x.graph().graph().edge_count() <= 2);
    }

    #[test]
    fn execute_basic() {
        let x = execute(&full(&[("e", "a", "m")]), &full(&[("f", "m", "b")])).unwrap();
        let g = x.graph().graph();
        assert_eq!(g.vertices(), &vset(&["a", "b"]));
        assert_eq!(g.endpoint_multiset(), vec![(VertexId::from("a"), VertexId::from("b"))]);
        assert_eq!(g.edge_ids().next().unwrap().as_str(), "[0:e,1:f]");
    }

    #[test]
    fn execute_two_incoherent_results() {
        // top graph coherent, bottom graph has red ⌣ blue
        let g = full(&[("in", "x", "m1"), ("out", "m2", "y")]);
        let h = coherent(&[("red", "m1", "m2"), ("blue", "m1", "m2")], &[]);
        let x = execute(&g, &h).unwrap();
        let r = x.graph();
        assert_eq!(r.graph().edge_count(), 2);
        assert!(r.graph().edges().all(|(_, e)| e.src.as_str() == "x" && e.tgt.as_str() == "y"));
        let ids: Vec<_> = r.graph().edge_ids().cloned().collect();
        assert!(!r.coherence().coherent(&ids[0], &ids[1]));
    }

    #[test]
    fn execute_disjoint_is_tensor() {
        let g = coherent(&[("e", "a", "b"), ("f", "b", "a")], &[]);
        let h = full(&[("p", "c", "d")]);
        let x = execute(&g, &h).unwrap().into_graph();
        let mut union = g.graph().clone();
        union.add_vertex("c");
        union.add_vertex("d");
        union.add_edge("p", "c", "d").unwrap();
        assert!(x.graph().equiv(&union));
        // & : cross pairs coherent, (e, f) still incoherent
        assert_eq!(x.coherence().pairs().count(), 2);
    }

    #[test]
    fn orthogonality_examples() {
        let v = ["a", "b"];
        let empty = CoherentGraph::empty_on(v);
        assert!(orthogonal(&empty, &full(&[("e", "a", "b"), ("f", "b", "a")])).unwrap().is_orthogonal());

        let g = full(&[("e", "a", "b")]);
        let h = full(&[("f", "b", "a")]);
        let o = orthogonal(&g, &h).unwrap();
        let w = o.witness().expect("2-cycle");
        assert_eq!(w.len(), 2);
        assert!(check_cycle(&plug_coherent(&g, &h), w).is_ok());
        assert!(!orthogonal(&h, &g).unwrap().is_orthogonal());
    }

    #[test]
    fn only_cycle_incoherent() {
        // enumerated by hand: the single alternating closed walk is e1 g1 e2 g2
        let g = coherent(&[("e1", "a", "b"), ("e2", "c", "d")], &[]);
        let h = full(&[("g1", "b", "c"), ("g2", "d", "a")]);
        let p = plug_coherent(&g, &h);
        assert!(coherent_cycles(&p).is_empty());
        assert!(orthogonal(&g, &h).unwrap().is_orthogonal());
        let g2 = full(&[("e1", "a", "b"), ("e2", "c", "d")]);
        assert_eq!(coherent_cycles(&plug_coherent(&g2, &h)).len(), 1);
    }

    #[test]
    fn orthogonal_needs_equal_vertices() {
        let g = full(&[("e", "a", "b")]);
        let h = CoherentGraph::empty_on(["a"]);
        assert!(matches!(orthogonal(&g, &h), Err(Error::Interface(_))));
    }

    #[test]
    fn self_loops_are_not_cycles() {
        let g = full(&[("l", "a", "a")]);
        let h = CoherentGraph::empty_on(["a"]);
        assert!(orthogonal(&g, &h).unwrap().is_orthogonal());
        // two loops from different sides do alternate
        let h = full(&[("k", "a", "a")]);
        assert_eq!(orthogonal(&g, &h).unwrap().witness().unwrap().len(), 2);
    }

    #[test]
    fn simple_variants() {
        let x = execute_simple(&full(&[("e", "a", "m")]), &full(&[("f", "m", "b")]));
        assert_eq!(x.graph().graph().edge_count(), 1);
        let v = ["a", "b"];
        assert!(orthogonal_simple(&full(&[("e", "a", "b")]), &CoherentGraph::empty_on(v))
            .unwrap()
            .is_orthogonal());
        assert!(!orthogonal_simple(&full(&[("e", "a", "b")]), &full(&[("f", "b", "a")]))
            .unwrap()
            .is_orthogonal());
    }

    #[test]
    fn simple_execution_survives_divergence() {
        let g = full(&[("in", "a", "u"), ("loop", "w", "u")]);
        let h = full(&[("uw", "u", "w"), ("out", "u", "b")]);
        assert!(execute(&g, &h).is_err());
        let x = execute_simple(&g, &h);
        // a→u→b only; going around the loop revisits u
        assert_eq!(x.graph().graph().edge_count(), 1);
    }

    #[test]
    fn shortest_witness_is_minimal() {
        // a 4-cycle and a 2-cycle; the witness must be the 2-cycle
        let g = full(&[("e1", "a", "b"), ("e2", "c", "d"), ("e3", "a", "c")]);
        let h = full(&[("f1", "b", "c"), ("f2", "d", "a"), ("f3", "c", "a")]);
        let w = orthogonal(&g, &h).unwrap().witness().unwrap().clone();
        assert_eq!(w.len(), 2);
        let all = coherent_cycles(&plug_coherent(&g, &h));
        assert!(all.iter().all(|c| c.len() >= 2));
        assert!(all.iter().any(|c| c.len() == 4));
    }

    #[test]
    fn chordless_check() {
        let g = full(&[("e1", "a", "b"), ("e2", "c", "d"), ("chord", "a", "c")]);
        let h = full(&[("f1", "b", "c"), ("f2", "d", "a")]);
        let p = plug_coherent(&g, &h);
        let cyc = coherent_cycles(&p).into_iter().find(|c| c.len() == 4).unwrap();
        assert!(!is_chordless(&p, &cyc));
    }
}
