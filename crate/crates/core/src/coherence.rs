//! Coherence relations on edge webs, coherent graphs and clique enumeration.

use std::collections::{BTreeMap, BTreeSet};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph::{coproduct_ids, EdgeId, Graph, Relabel, VertexId};

/// A reflexive symmetric relation on a finite web of edge ids.
///
/// Stored as a bit matrix over the sorted web, the diagonal included.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Coherence {
    web: Vec<EdgeId>,
    rows: Vec<FixedBitSet>,
}

impl Coherence {
    /// All distinct elements pairwise incoherent.
    pub fn discrete(web: impl IntoIterator<Item = EdgeId>) -> Self {
        let web: BTreeSet<EdgeId> = web.into_iter().collect();
        let n = web.len();
        let rows = (0..n)
            .map(|i| {
                let mut row = FixedBitSet::with_capacity(n);
                row.insert(i);
                row
            })
            .collect();
        Self {
            web: web.into_iter().collect(),
            rows,
        }
    }

    /// All elements pairwise coherent.
    pub fn full(web: impl IntoIterator<Item = EdgeId>) -> Self {
        let mut c = Self::discrete(web);
        for row in &mut c.rows {
            row.insert_range(..);
        }
        c
    }

    /// `web` must be sorted without repeats and `rows` a symmetric matrix
    /// with the diagonal set.
    pub(crate) fn from_rows(web: Vec<EdgeId>, rows: Vec<FixedBitSet>) -> Self {
        debug_assert!(web.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(rows.iter().enumerate().all(|(i, r)| r.contains(i) && r.ones().all(|j| rows[j].contains(i))));
        Self { web, rows }
    }

    pub fn from_pairs(
        web: impl IntoIterator<Item = EdgeId>,
        pairs: impl IntoIterator<Item = (EdgeId, EdgeId)>,
    ) -> Result<Self> {
        let mut c = Self::discrete(web);
        for (a, b) in pairs {
            c.add_pair(a, b)?;
        }
        Ok(c)
    }

    fn index(&self, x: &EdgeId) -> Result<usize> {
        self.web.binary_search(x).map_err(|_| Error::Web(x.clone()))
    }

    /// Declares `a` and `b` coherent. Pairs `(a, a)` are accepted and ignored.
    pub fn add_pair(&mut self, a: EdgeId, b: EdgeId) -> Result<()> {
        let (i, j) = (self.index(&a)?, self.index(&b)?);
        self.rows[i].insert(j);
        self.rows[j].insert(i);
        Ok(())
    }

    /// The web, sorted.
    pub fn web(&self) -> &[EdgeId] {
        &self.web
    }

    /// Coherent pairs of distinct elements, each once, `a < b`.
    pub fn pairs(&self) -> impl Iterator<Item = (&EdgeId, &EdgeId)> + '_ {
        self.rows.iter().enumerate().flat_map(move |(i, row)| {
            row.ones()
                .filter(move |&j| j > i)
                .map(move |j| (&self.web[i], &self.web[j]))
        })
    }

    pub fn coherent(&self, a: &EdgeId, b: &EdgeId) -> bool {
        match (self.web.binary_search(a), self.web.binary_search(b)) {
            (Ok(i), Ok(j)) => self.rows[i].contains(j),
            _ => false,
        }
    }

    /// `a ⌣ b`: distinct and not coherent.
    pub fn strictly_incoherent(&self, a: &EdgeId, b: &EdgeId) -> bool {
        a != b && !self.coherent(a, b)
    }

    /// Every unordered pair of `set` is coherent.
    pub fn is_clique<'a>(&self, set: impl IntoIterator<Item = &'a EdgeId>) -> Result<bool> {
        let items = set.into_iter().map(|x| self.index(x)).collect::<Result<Vec<_>>>()?;
        Ok(items.iter().all(|&i| items.iter().all(|&j| self.rows[i].contains(j))))
    }

    /// Inclusion of relations (same web assumed).
    pub fn is_subrelation_of(&self, other: &Coherence) -> bool {
        self.pairs().all(|(a, b)| other.coherent(a, b))
    }

    /// Restriction to a sub-web.
    pub fn restrict(&self, keep: &BTreeSet<EdgeId>) -> Coherence {
        let kept: Vec<usize> = (0..self.web.len()).filter(|&i| keep.contains(&self.web[i])).collect();
        let rows = kept
            .iter()
            .map(|&i| {
                let mut row = FixedBitSet::with_capacity(kept.len());
                for (k, &j) in kept.iter().enumerate() {
                    row.set(k, self.rows[i].contains(j));
                }
                row
            })
            .collect();
        Coherence {
            web: kept.iter().map(|&i| self.web[i].clone()).collect(),
            rows,
        }
    }

    /// Adjacency rows over the sorted web, the diagonal included.
    pub(crate) fn rows(&self) -> &[FixedBitSet] {
        &self.rows
    }

    /// All inclusion-maximal cliques, sorted. The empty web has the single
    /// maximal clique `∅`.
    pub fn maximal_cliques(&self) -> Vec<BTreeSet<EdgeId>> {
        let n = self.web.len();
        let mut found = Vec::new();
        let mut p = FixedBitSet::with_capacity(n);
        p.insert_range(..);
        bron_kerbosch(&self.rows, &mut Vec::new(), p, FixedBitSet::with_capacity(n), &mut found);
        let mut cliques: Vec<BTreeSet<EdgeId>> = found
            .into_iter()
            .map(|c| c.into_iter().map(|i| self.web[i].clone()).collect())
            .collect();
        cliques.sort();
        cliques
    }
}

/// Pivoted Bron–Kerbosch; the pivot is the lowest index in `P ∪ X`.
fn bron_kerbosch(
    rows: &[FixedBitSet],
    r: &mut Vec<usize>,
    mut p: FixedBitSet,
    mut x: FixedBitSet,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_clear() {
        if x.is_clear() {
            out.push(r.clone());
        }
        return;
    }
    let pivot = p.ones().chain(x.ones()).min().expect("P is non-empty");
    let candidates: Vec<usize> = p.ones().filter(|&v| v == pivot || !rows[pivot].contains(v)).collect();
    for v in candidates {
        let mut np = p.clone();
        np.intersect_with(&rows[v]);
        np.set(v, false);
        let mut nx = x.clone();
        nx.intersect_with(&rows[v]);
        nx.set(v, false);
        r.push(v);
        bron_kerbosch(rows, r, np, nx, out);
        r.pop();
        p.set(v, false);
        x.insert(v);
    }
}

/// `A & B`: disjoint union of webs, every cross pair coherent.
///
/// Webs are made disjoint by tagging (see [`Graph`] coproducts): ids are kept
/// when they do not clash and prefixed `l.`/`r.` otherwise.
pub fn coh_with(a: &Coherence, b: &Coherence) -> Coherence {
    combine(a, b, true).0
}

/// `A ⊕ B`: disjoint union of webs, every cross pair incoherent.
pub fn coh_plus(a: &Coherence, b: &Coherence) -> Coherence {
    combine(a, b, false).0
}

pub(crate) fn combine(a: &Coherence, b: &Coherence, cross: bool) -> (Coherence, Relabel, Relabel) {
    let [la, lb] = coproduct_ids(
        [a.web.iter().cloned().collect(), b.web.iter().cloned().collect()],
        ["l", "r"],
    );
    let mut out = Coherence::discrete(la.values().chain(lb.values()).cloned());
    for (x, y) in a.pairs() {
        out.add_pair(la[x].clone(), la[y].clone()).unwrap();
    }
    for (x, y) in b.pairs() {
        out.add_pair(lb[x].clone(), lb[y].clone()).unwrap();
    }
    if cross {
        for x in la.values() {
            for y in lb.values() {
                out.add_pair(x.clone(), y.clone()).unwrap();
            }
        }
    }
    (out, la, lb)
}

/// Distinct edges are coherent iff they share no vertex.
pub fn simple_coherence(g: &Graph) -> Coherence {
    let edges: Vec<_> = g.edges().map(|(_, e)| e).collect();
    let mut c = Coherence::discrete(g.edge_ids().cloned());
    for (i, ea) in edges.iter().enumerate() {
        for (j, eb) in edges.iter().enumerate().skip(i + 1) {
            if !ea.is_incident(eb) {
                c.rows[i].insert(j);
                c.rows[j].insert(i);
            }
        }
    }
    c
}

/// Distinct edges `e`, `f` are incoherent iff they are incident or some edge
/// of `g` is incident to both.
pub fn chordless_coherence(g: &Graph) -> Coherence {
    // `g` incident to both `e` and `f` means either `e`, `f` already share an
    // endpoint, or `g` joins an endpoint of `e` to an endpoint of `f`.
    let vertices: Vec<&VertexId> = g.vertices().iter().collect();
    let index = |v: &VertexId| vertices.binary_search(&v).unwrap();
    let ends: Vec<(usize, usize)> = g.edges().map(|(_, e)| (index(&e.src), index(&e.tgt))).collect();
    let mut near: Vec<FixedBitSet> = (0..vertices.len())
        .map(|v| {
            let mut b = FixedBitSet::with_capacity(vertices.len());
            b.insert(v);
            b
        })
        .collect();
    for &(s, t) in &ends {
        near[s].insert(t);
        near[t].insert(s);
    }
    let mut c = Coherence::discrete(g.edge_ids().cloned());
    let mut reach = FixedBitSet::with_capacity(vertices.len());
    for (i, &(s, t)) in ends.iter().enumerate() {
        reach.clone_from(&near[s]);
        reach.union_with(&near[t]);
        for (j, &(x, y)) in ends.iter().enumerate().skip(i + 1) {
            if !reach.contains(x) && !reach.contains(y) {
                c.rows[i].insert(j);
                c.rows[j].insert(i);
            }
        }
    }
    c
}

/// A directed multigraph whose edges carry a coherence relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherentGraph {
    graph: Graph,
    coh: Coherence,
}

impl CoherentGraph {
    pub fn new(graph: Graph, coh: Coherence) -> Result<Self> {
        if !graph.edge_ids().eq(coh.web().iter()) {
            return Err(Error::WebMismatch);
        }
        Ok(Self { graph, coh })
    }

    pub(crate) fn new_unchecked(graph: Graph, coh: Coherence) -> Self {
        debug_assert!(graph.edge_ids().eq(coh.web().iter()));
        Self { graph, coh }
    }

    /// Every pair of edges coherent (the uncoloured case).
    pub fn full(graph: Graph) -> Self {
        let coh = Coherence::full(graph.edge_ids().cloned());
        Self { graph, coh }
    }

    /// Every pair of distinct edges incoherent.
    pub fn discrete(graph: Graph) -> Self {
        let coh = Coherence::discrete(graph.edge_ids().cloned());
        Self { graph, coh }
    }

    pub fn with_simple_coherence(graph: Graph) -> Self {
        let coh = simple_coherence(&graph);
        Self { graph, coh }
    }

    pub fn with_chordless_coherence(graph: Graph) -> Self {
        let coh = chordless_coherence(&graph);
        Self { graph, coh }
    }

    /// `∅_V`.
    pub fn empty_on<I, V>(vertices: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: Into<VertexId>,
    {
        Self::full(Graph::empty_on(vertices))
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn coherence(&self) -> &Coherence {
        &self.coh
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        self.graph.vertices()
    }

    pub fn into_parts(self) -> (Graph, Coherence) {
        (self.graph, self.coh)
    }

    /// The coherence is included in the simple coherence.
    pub fn is_simple(&self) -> bool {
        self.coh.pairs().all(|(a, b)| {
            let (ea, eb) = (self.graph.edge(a).unwrap(), self.graph.edge(b).unwrap());
            !ea.is_incident(eb)
        })
    }

    /// The sub-graph on the same vertices induced by a set of edges.
    pub fn restrict_edges(&self, keep: &BTreeSet<EdgeId>) -> CoherentGraph {
        CoherentGraph {
            graph: self.graph.restrict_edges(keep),
            coh: self.coh.restrict(keep),
        }
    }

    pub fn rename_vertices(&self, map: &BTreeMap<VertexId, VertexId>) -> Result<CoherentGraph> {
        Ok(CoherentGraph {
            graph: self.graph.rename_vertices(map)?,
            coh: self.coh.clone(),
        })
    }

    pub fn maximal_cliques(&self) -> Vec<BTreeSet<EdgeId>> {
        self.coh.maximal_cliques()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(names: &[&str]) -> Vec<EdgeId> {
        names.iter().map(|s| EdgeId::from(*s)).collect()
    }

    fn set(names: &[&str]) -> BTreeSet<EdgeId> {
        ids(names).into_iter().collect()
    }

    #[test]
    fn with_of_singletons() {
        let c = coh_with(&Coherence::discrete(ids(&["a"])), &Coherence::discrete(ids(&["b"])));
        assert_eq!(c.web().len(), 2);
        assert!(c.coherent(&"a".into(), &"b".into()));
    }

    #[test]
    fn with_unit() {
        let a = Coherence::from_pairs(ids(&["x", "y", "z"]), [("x".into(), "y".into())]).unwrap();
        assert_eq!(coh_with(&a, &Coherence::default()), a);
    }

    #[test]
    fn with_of_incoherent_pairs_counts_cross_pairs() {
        let a = Coherence::discrete(ids(&["a1", "a2"]));
        let b = Coherence::discrete(ids(&["b1", "b2"]));
        let c = coh_with(&a, &b);
        // enumerate all unordered pairs
        let web: Vec<_> = c.web().to_vec();
        let mut cross = 0;
        let mut within = 0;
        for i in 0..web.len() {
            for j in i + 1..web.len() {
                if c.coherent(&web[i], &web[j]) {
                    if web[i].as_str().as_bytes()[0] == web[j].as_str().as_bytes()[0] {
                        within += 1;
                    } else {
                        cross += 1;
                    }
                }
            }
        }
        assert_eq!((cross, within), (4, 0));
    }

    #[test]
    fn plus_of_singletons_and_within() {
        let c = coh_plus(&Coherence::discrete(ids(&["a"])), &Coherence::discrete(ids(&["b"])));
        assert!(!c.coherent(&"a".into(), &"b".into()));
        let a = Coherence::full(ids(&["x", "y"]));
        let c = coh_plus(&a, &Coherence::discrete(ids(&["z"])));
        assert!(c.coherent(&"x".into(), &"y".into()));
        assert!(!c.coherent(&"x".into(), &"z".into()));
    }

    #[test]
    fn clashing_webs_get_tagged() {
        let a = Coherence::full(ids(&["e"]));
        let c = coh_plus(&a, &a);
        assert_eq!(c.web(), &ids(&["l.e", "r.e"])[..]);
    }

    #[test]
    fn maximal_cliques_of_plus_are_union() {
        let a = Coherence::from_pairs(ids(&["a", "b", "c"]), [("a".into(), "b".into())]).unwrap();
        let b = Coherence::from_pairs(ids(&["x", "y"]), [("x".into(), "y".into())]).unwrap();
        let mut expected = a.maximal_cliques();
        expected.extend(b.maximal_cliques());
        expected.sort();
        assert_eq!(coh_plus(&a, &b).maximal_cliques(), expected);
    }

    #[test]
    fn clique_checks() {
        let c = Coherence::from_pairs(ids(&["a", "b", "c"]), [("a".into(), "b".into())]).unwrap();
        assert!(c.is_clique(&set(&["a"])).unwrap());
        assert!(c.is_clique(&set(&[])).unwrap());
        assert!(c.is_clique(&set(&["a", "b"])).unwrap());
        assert!(!c.is_clique(&set(&["a", "c"])).unwrap());
        assert!(matches!(c.is_clique(&set(&["q"])), Err(Error::Web(_))));
    }

    #[test]
    fn cliques_small_examples() {
        let full = Coherence::full(ids(&["a", "b", "c", "d"]));
        assert_eq!(full.maximal_cliques(), vec![set(&["a", "b", "c", "d"])]);
        let disc = Coherence::discrete(ids(&["a", "b", "c"]));
        assert_eq!(disc.maximal_cliques(), vec![set(&["a"]), set(&["b"]), set(&["c"])]);
        // e1 ∘ e2, e3 incoherent with both; checked by hand against all 8 subsets
        let c = Coherence::from_pairs(ids(&["e1", "e2", "e3"]), [("e1".into(), "e2".into())]).unwrap();
        assert_eq!(c.maximal_cliques(), vec![set(&["e1", "e2"]), set(&["e3"])]);
        assert_eq!(Coherence::default().maximal_cliques(), vec![BTreeSet::new()]);
    }

    fn graph(edges: &[(&str, &str, &str)]) -> Graph {
        Graph::from_edges(edges.iter().copied()).unwrap()
    }

    #[test]
    fn simple_coherence_examples() {
        let g = graph(&[("e", "a", "b"), ("f", "c", "d"), ("g", "b", "c")]);
        let c = simple_coherence(&g);
        assert!(c.coherent(&"e".into(), &"f".into()));
        assert!(!c.coherent(&"e".into(), &"g".into()));
        let m = graph(&[("e", "a", "b"), ("f", "c", "d"), ("h", "x", "y")]);
        assert_eq!(simple_coherence(&m), Coherence::full(m.edge_ids().cloned()));
    }

    #[test]
    fn chordless_coherence_examples() {
        let g = graph(&[("e", "a", "b"), ("f", "c", "d")]);
        assert!(chordless_coherence(&g).coherent(&"e".into(), &"f".into()));
        let g = graph(&[("e", "a", "b"), ("f", "c", "d"), ("g", "b", "c")]);
        assert!(!chordless_coherence(&g).coherent(&"e".into(), &"f".into()));
        let g = graph(&[("uv", "u", "v"), ("vu", "v", "u")]);
        assert!(!chordless_coherence(&g).coherent(&"uv".into(), &"vu".into()));
    }

    /// Literal reading: incoherent iff incident or a third edge touches both.
    fn chordless_by_definition(g: &Graph) -> Coherence {
        let edges: Vec<_> = g.edges().collect();
        let mut c = Coherence::discrete(g.edge_ids().cloned());
        for (a, ea) in &edges {
            for (b, eb) in &edges {
                if a >= b {
                    continue;
                }
                let bridged = edges.iter().any(|(_, eg)| eg.is_incident(ea) && eg.is_incident(eb));
                if !ea.is_incident(eb) && !bridged {
                    c.add_pair((*a).clone(), (*b).clone()).unwrap();
                }
            }
        }
        c
    }

    #[test]
    fn chordless_matches_definition_on_small_graphs() {
        // all digraphs on 4 vertices drawn from a fixed pool of 7 edges
        let pool = [
            ("a", "b"),
            ("b", "c"),
            ("c", "d"),
            ("d", "a"),
            ("a", "c"),
            ("b", "b"),
            ("b", "a"),
        ];
        for mask in 0u32..(1 << pool.len()) {
            let mut g = Graph::empty_on(["a", "b", "c", "d"]);
            for (i, (s, t)) in pool.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    g.add_edge(format!("e{i}"), *s, *t).unwrap();
                }
            }
            let fast = chordless_coherence(&g);
            assert_eq!(fast, chordless_by_definition(&g), "mask {mask}");
            assert!(fast.is_subrelation_of(&simple_coherence(&g)));
        }
    }

    #[test]
    fn is_simple_examples() {
        let g = graph(&[("e", "a", "b"), ("f", "b", "c"), ("h", "c", "d")]);
        assert!(CoherentGraph::with_chordless_coherence(g.clone()).is_simple());
        assert!(!CoherentGraph::full(g).is_simple());
        assert!(CoherentGraph::full(Graph::empty_on(["a"])).is_simple());
    }

    #[test]
    fn coherent_graph_checks_web() {
        let g = graph(&[("e", "a", "b")]);
        assert!(matches!(
            CoherentGraph::new(g.clone(), Coherence::discrete(ids(&["f"]))),
            Err(Error::WebMismatch)
        ));
        assert!(CoherentGraph::new(g, Coherence::discrete(ids(&["e"]))).is_ok());
    }
}
