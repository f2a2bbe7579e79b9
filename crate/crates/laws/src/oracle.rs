//! Brute-force reference computations written straight from the definitions.
//! Nothing here calls the search code of `cig_core::execution`; pluggings are
//! only read through their edges and `Plugging::coherent`.

use std::collections::BTreeSet;

use cig_core::{Edge, EdgeId, Graph, Plugging, TaggedEdge, VertexId};

/// An alternating walk that never repeats an edge.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Trail {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<TaggedEdge>,
}

impl Trail {
    /// No vertex is visited twice.
    pub fn is_simple(&self) -> bool {
        let distinct: BTreeSet<_> = self.vertices.iter().collect();
        distinct.len() == self.vertices.len()
    }
}

fn edge_list(p: &Plugging) -> Vec<(TaggedEdge, Edge)> {
    p.edges().map(|(te, e)| (te, e.clone())).collect()
}

/// Every alternating trail of length at least one, from every vertex.
/// `coherent` keeps only trails whose edges are pairwise coherent; `simple`
/// keeps only trails that never revisit a vertex.
pub fn trails(p: &Plugging, coherent: bool, simple: bool) -> Vec<Trail> {
    fn go(
        p: &Plugging,
        edges: &[(TaggedEdge, Edge)],
        coherent: bool,
        simple: bool,
        cur: &mut Trail,
        out: &mut Vec<Trail>,
    ) {
        let at = cur.vertices.last().unwrap().clone();
        for (te, e) in edges {
            if e.src != at || cur.edges.last().is_some_and(|last| last.tag == te.tag) || cur.edges.contains(te) {
                continue;
            }
            if coherent && !cur.edges.iter().all(|x| p.coherent(x, te)) {
                continue;
            }
            if simple && cur.vertices.contains(&e.tgt) {
                continue;
            }
            cur.edges.push(te.clone());
            cur.vertices.push(e.tgt.clone());
            out.push(cur.clone());
            go(p, edges, coherent, simple, cur, out);
            cur.edges.pop();
            cur.vertices.pop();
        }
    }
    let edges = edge_list(p);
    let mut out = Vec::new();
    for v in p.vertices() {
        let mut cur = Trail {
            vertices: vec![v.clone()],
            edges: Vec::new(),
        };
        go(p, &edges, coherent, simple, &mut cur, &mut out);
    }
    out
}

/// The rotation of a cyclic edge sequence that is smallest in `(tag, id)`
/// order.
pub fn canonical_rotation(edges: &[TaggedEdge]) -> Vec<TaggedEdge> {
    (0..edges.len())
        .map(|k| edges[k..].iter().chain(&edges[..k]).cloned().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

/// Closed trails whose vertices (before returning) are pairwise distinct and
/// whose last and first edges come from different components. Each cycle is
/// reported once, as its canonical rotation.
pub fn simple_cycles(p: &Plugging) -> BTreeSet<Vec<TaggedEdge>> {
    fn go(
        edges: &[(TaggedEdge, Edge)],
        start: &VertexId,
        cur: &mut Trail,
        out: &mut BTreeSet<Vec<TaggedEdge>>,
    ) {
        let at = cur.vertices.last().unwrap().clone();
        for (te, e) in edges {
            if e.src != at || cur.edges.last().is_some_and(|last| last.tag == te.tag) || cur.edges.contains(te) {
                continue;
            }
            if e.tgt == *start {
                if cur.edges.first().is_some_and(|first| first.tag != te.tag) {
                    let mut cycle = cur.edges.clone();
                    cycle.push(te.clone());
                    out.insert(canonical_rotation(&cycle));
                }
                continue;
            }
            if cur.vertices.contains(&e.tgt) {
                continue;
            }
            cur.edges.push(te.clone());
            cur.vertices.push(e.tgt.clone());
            go(edges, start, cur, out);
            cur.edges.pop();
            cur.vertices.pop();
        }
    }
    let edges = edge_list(p);
    let mut out = BTreeSet::new();
    for v in p.vertices() {
        let mut cur = Trail {
            vertices: vec![v.clone()],
            edges: Vec::new(),
        };
        go(&edges, v, &mut cur, &mut out);
    }
    out
}

pub fn pairwise_coherent(p: &Plugging, edges: &[TaggedEdge]) -> bool {
    edges
        .iter()
        .enumerate()
        .all(|(i, a)| edges[i + 1..].iter().all(|b| p.coherent(a, b)))
}

/// Vertex sequence of a cycle given by its edges.
pub fn cycle_vertices(p: &Plugging, edges: &[TaggedEdge]) -> Vec<VertexId> {
    edges.iter().map(|te| p.edge(te).unwrap().src.clone()).collect()
}

/// Some edge of the plugging joins two vertices of the cycle that are not
/// next to each other on it.
pub fn has_chord(p: &Plugging, cycle: &[VertexId]) -> bool {
    let n = cycle.len();
    p.edges().any(|(_, e)| {
        let i = cycle.iter().position(|v| *v == e.src);
        let j = cycle.iter().position(|v| *v == e.tgt);
        match (i, j) {
            (Some(i), Some(j)) => {
                let d = i.abs_diff(j);
                d > 1 && d < n - 1
            }
            _ => false,
        }
    })
}

/// In a cycle of length at least four, some edge joins the two ends of a
/// cycle edge from the other component.
pub fn has_cross_parallel(p: &Plugging, cycle: &[TaggedEdge]) -> bool {
    cycle.len() >= 4
        && cycle.iter().any(|c| {
            let ce = p.edge(c).unwrap();
            p.edges().any(|(te, e)| {
                te.tag != c.tag
                    && ((e.src == ce.src && e.tgt == ce.tgt) || (e.src == ce.tgt && e.tgt == ce.src))
            })
        })
}

fn incident(a: &Edge, b: &Edge) -> bool {
    a.src == b.src || a.src == b.tgt || a.tgt == b.src || a.tgt == b.tgt
}

/// Incoherent pairs of the chordless coherence, straight from its
/// definition: `e ≠ f` are incoherent iff they are incident or some edge is
/// incident to both.
pub fn chordless_incoherent_pairs(g: &Graph) -> BTreeSet<(EdgeId, EdgeId)> {
    let edges: Vec<_> = g.edges().collect();
    let mut out = BTreeSet::new();
    for (i, (a, ea)) in edges.iter().enumerate() {
        for (b, eb) in &edges[i + 1..] {
            if incident(ea, eb) || edges.iter().any(|(_, x)| incident(x, ea) && incident(x, eb)) {
                out.insert(((*a).clone(), (*b).clone()));
            }
        }
    }
    out
}

/// Undirected adjacency as bitmasks, ignoring loops. At most 64 vertices.
pub fn adjacency(g: &Graph) -> Vec<u64> {
    let vs: Vec<&VertexId> = g.vertices().iter().collect();
    assert!(vs.len() <= 64);
    let index = |v: &VertexId| vs.iter().position(|x| *x == v).unwrap();
    let mut adj = vec![0u64; vs.len()];
    for (_, e) in g.edges() {
        let (s, t) = (index(&e.src), index(&e.tgt));
        if s != t {
            adj[s] |= 1 << t;
            adj[t] |= 1 << s;
        }
    }
    adj
}

/// No induced path on four vertices in the underlying undirected graph.
pub fn is_p4_free(adj: &[u64]) -> bool {
    // middle edge b–c of a path a–b–c–d: a sees b only, d sees c only, and a, d
    // are not adjacent
    for b in 0..adj.len() {
        for c in (0..adj.len()).filter(|&c| adj[b] >> c & 1 == 1) {
            let ends_a = adj[b] & !adj[c] & !(1 << c);
            let ends_d = adj[c] & !adj[b] & !(1 << b);
            let mut a_set = ends_a;
            while a_set != 0 {
                let a = a_set.trailing_zeros();
                a_set &= a_set - 1;
                if ends_d & !adj[a as usize] & !(1 << a) != 0 {
                    return false;
                }
            }
        }
    }
    true
}

/// All inclusion-maximal cliques by checking every subset. Small webs only.
pub fn brute_force_cliques(web: &[EdgeId], coherent: impl Fn(&EdgeId, &EdgeId) -> bool) -> BTreeSet<BTreeSet<EdgeId>> {
    let n = web.len();
    assert!(n <= 16);
    let is_clique =
        |mask: u32| (0..n).all(|i| mask >> i & 1 == 0 || (i + 1..n).all(|j| mask >> j & 1 == 0 || coherent(&web[i], &web[j])));
    let cliques: Vec<u32> = (0..1u32 << n).filter(|&m| is_clique(m)).collect();
    let clique_set: BTreeSet<u32> = cliques.iter().copied().collect();
    cliques
        .into_iter()
        .filter(|&m| (0..n).all(|i| m >> i & 1 == 1 || !clique_set.contains(&(m | 1 << i))))
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).map(|i| web[i].clone()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use cig_core::{plug, CoherentGraph};

    fn graph(edges: &[(&str, &str, &str)]) -> Graph {
        Graph::from_edges(edges.iter().copied()).unwrap()
    }

    #[test]
    fn square_has_one_cycle() {
        let g = graph(&[("e", "a", "b"), ("f", "c", "d")]);
        let h = graph(&[("x", "b", "c"), ("y", "d", "a")]);
        let cycles = simple_cycles(&plug(&g, &h));
        assert_eq!(cycles.len(), 1);
        let c = cycles.iter().next().unwrap();
        assert_eq!(c[0], TaggedEdge::new(cig_core::Tag(0), "e"));
    }

    #[test]
    fn p4() {
        let path = graph(&[("1", "a", "b"), ("2", "b", "c"), ("3", "c", "d")]);
        assert!(!is_p4_free(&adjacency(&path)));
        let square = graph(&[("1", "a", "b"), ("2", "b", "c"), ("3", "c", "d"), ("4", "d", "a")]);
        assert!(is_p4_free(&adjacency(&square)));
    }

    #[test]
    fn cliques_by_subsets() {
        let g = CoherentGraph::discrete(graph(&[("e", "a", "b"), ("f", "b", "c")]));
        let web: Vec<EdgeId> = g.graph().edge_ids().cloned().collect();
        let cliques = brute_force_cliques(&web, |a, b| g.coherence().coherent(a, b));
        assert_eq!(cliques.len(), 2);
    }
}
