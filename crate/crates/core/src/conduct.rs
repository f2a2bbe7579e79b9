//! Conducts through their generators: tensor and par on tests, membership,
//! linear application, incoherent sums and the maximal-clique quotient.

use std::collections::{BTreeMap, BTreeSet};

use fixedbitset::FixedBitSet;

use crate::coherence::{Coherence, CoherentGraph};
use crate::error::{Error, Result};
use crate::execution::{execute, orthogonal, Orthogonality};
use crate::graph::{coproduct_ids, EdgeId, Graph, VertexId};

/// Coproduct of coherent graphs. `cross[i][j]` says whether edges of part `i`
/// are coherent with edges of part `j`.
fn coproduct<const N: usize>(parts: [&CoherentGraph; N], prefixes: [&str; N], cross: [[bool; N]; N]) -> CoherentGraph {
    let ids = coproduct_ids(
        parts.map(|p| p.graph().edge_ids().cloned().collect::<BTreeSet<_>>()),
        prefixes,
    );
    let mut graph = Graph::empty_on(parts.iter().flat_map(|p| p.vertices().iter().cloned()));
    for (p, relabel) in parts.iter().zip(&ids) {
        for (id, e) in p.graph().edges() {
            graph
                .add_edge(relabel[id].clone(), e.src.clone(), e.tgt.clone())
                .expect("coproduct ids are distinct");
        }
    }
    let web: Vec<EdgeId> = graph.edge_ids().cloned().collect();
    // global index of every local edge, part by part
    let index: Vec<Vec<usize>> = ids
        .iter()
        .map(|relabel| relabel.values().map(|id| web.binary_search(id).unwrap()).collect())
        .collect();
    let mut rows = vec![FixedBitSet::with_capacity(web.len()); web.len()];
    for (i, p) in parts.iter().enumerate() {
        let local = p.coherence().rows();
        for (a, &ga) in index[i].iter().enumerate() {
            let row = &mut rows[ga];
            row.extend(local[a].ones().map(|b| index[i][b]));
            for j in (0..N).filter(|&j| j != i && cross[i][j]) {
                row.extend(index[j].iter().copied());
            }
        }
    }
    CoherentGraph::new_unchecked(graph, Coherence::from_rows(web, rows))
}

fn disjoint(g: &CoherentGraph, h: &CoherentGraph) -> Result<()> {
    let shared: Vec<VertexId> = g.vertices().intersection(h.vertices()).cloned().collect();
    if shared.is_empty() {
        Ok(())
    } else {
        Err(Error::Location(shared))
    }
}

fn same_vertices(g: &CoherentGraph, h: &CoherentGraph) -> Result<()> {
    if g.vertices() == h.vertices() {
        Ok(())
    } else {
        Err(Error::Interface("the two graphs live on different vertex sets".into()))
    }
}

/// `G ⊗ H` on disjoint vertex sets: disjoint union with `Coh(G) & Coh(H)`.
pub fn tensor_graph(g: &CoherentGraph, h: &CoherentGraph) -> Result<CoherentGraph> {
    disjoint(g, h)?;
    Ok(coproduct([g, h], ["l", "r"], [[false, true], [true, false]]))
}

/// The test of a tensor of conducts: disjoint union plus both edges `u>v`
/// and `v>u` for every `u ∈ V(G)`, `v ∈ V(H)`. All cross and fresh edges are
/// incoherent.
pub fn par_graph(g: &CoherentGraph, h: &CoherentGraph) -> Result<CoherentGraph> {
    disjoint(g, h)?;
    let mut join = Graph::empty_on(g.vertices().iter().chain(h.vertices()).cloned());
    for u in g.vertices() {
        for v in h.vertices() {
            join.add_edge(format!("{u}>{v}"), u.clone(), v.clone())?;
            join.add_edge(format!("{v}>{u}"), v.clone(), u.clone())?;
        }
    }
    let join = CoherentGraph::discrete(join);
    Ok(coproduct([g, h, &join], ["l", "r", "j"], [[false; 3]; 3]))
}

/// `G ⊞ H` on the same vertices: union with `Coh(G) ⊕ Coh(H)`.
pub fn boxplus(g: &CoherentGraph, h: &CoherentGraph) -> Result<CoherentGraph> {
    same_vertices(g, h)?;
    Ok(coproduct([g, h], ["l", "r"], [[false; 2]; 2]))
}

/// A conduct `A = {t}^⊥`, represented by its test `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub test: CoherentGraph,
}

impl Generator {
    pub fn new(test: CoherentGraph) -> Self {
        Self { test }
    }

    /// The conduct on a single vertex: its test has no edges.
    pub fn atom(v: impl Into<VertexId>) -> Self {
        Self::new(CoherentGraph::empty_on([v.into()]))
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        self.test.vertices()
    }
}

/// Test of `A ⊗ B`.
pub fn conduct_tensor_test(a: &Generator, b: &Generator) -> Result<Generator> {
    par_graph(&a.test, &b.test).map(Generator::new)
}

/// Test of `A ⅋ B`.
pub fn conduct_par_test(a: &Generator, b: &Generator) -> Result<Generator> {
    tensor_graph(&a.test, &b.test).map(Generator::new)
}

/// `F ∈ {t}^⊥`.
pub fn member_of(f: &CoherentGraph, t: &Generator) -> Result<bool> {
    Ok(orthogonal(f, &t.test)?.is_orthogonal())
}

/// Applies `F ∈ A ⊸ B` to `G ∈ A`, where `A` lives on `interface`.
///
/// The side condition `F ⊥ G ⊗ ∅` is checked first; a failure is reported
/// with its cycle. The result lives on `V(F) ∖ interface`.
pub fn linear_apply(f: &CoherentGraph, g: &CoherentGraph, interface: &BTreeSet<VertexId>) -> Result<CoherentGraph> {
    if g.vertices() != interface {
        return Err(Error::Interface("the argument must live exactly on the interface".into()));
    }
    if !interface.is_subset(f.vertices()) {
        return Err(Error::Interface("the interface is not contained in the function's vertices".into()));
    }
    let rest = CoherentGraph::empty_on(f.vertices().difference(interface).cloned());
    let padded = tensor_graph(g, &rest)?;
    if let Orthogonality::NotOrthogonal(w) = orthogonal(f, &padded)? {
        return Err(Error::NotOrthogonal(Box::new(w)));
    }
    Ok(execute(f, g)?.into_graph())
}

/// The incoherent sum of the subgraphs induced by the maximal cliques, each
/// fully coherent. Block `k` renames edge `e` to `k/e`.
pub fn canonical_form(g: &CoherentGraph) -> CoherentGraph {
    let mut graph = Graph::empty_on(g.vertices().iter().cloned());
    let mut blocks = Vec::new();
    for (k, clique) in g.maximal_cliques().iter().enumerate() {
        let mut block = Vec::with_capacity(clique.len());
        for id in clique {
            let e = g.graph().edge(id).unwrap();
            let new = EdgeId::from(format!("{k}/{id}"));
            graph.add_edge(new.clone(), e.src.clone(), e.tgt.clone()).unwrap();
            block.push(new);
        }
        blocks.push(block);
    }
    let mut coh = Coherence::discrete(graph.edge_ids().cloned());
    for block in &blocks {
        for (i, a) in block.iter().enumerate() {
            for b in &block[i + 1..] {
                coh.add_pair(a.clone(), b.clone()).unwrap();
            }
        }
    }
    CoherentGraph::new_unchecked(graph, coh)
}

/// The endpoint multisets of the maximal cliques, sorted.
pub fn clique_profile(g: &CoherentGraph) -> Vec<Vec<(VertexId, VertexId)>> {
    let mut profile: Vec<_> = g
        .maximal_cliques()
        .iter()
        .map(|c| {
            let mut ends: Vec<_> = c
                .iter()
                .map(|id| {
                    let e = g.graph().edge(id).unwrap();
                    (e.src.clone(), e.tgt.clone())
                })
                .collect();
            ends.sort();
            ends
        })
        .collect();
    profile.sort();
    profile
}

/// Same vertices and a bijection between maximal cliques that preserves the
/// endpoint multiset of each clique.
pub fn equiv_r(g: &CoherentGraph, h: &CoherentGraph) -> bool {
    g.vertices() == h.vertices() && clique_profile(g) == clique_profile(h)
}

/// No two distinct edges with the same source and target.
pub fn is_principal_generator(g: &CoherentGraph) -> bool {
    let mut seen = BTreeMap::new();
    g.graph()
        .edges()
        .all(|(_, e)| seen.insert((&e.src, &e.tgt), ()).is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherence::chordless_coherence;

    fn full(edges: &[(&str, &str, &str)]) -> CoherentGraph {
        CoherentGraph::full(Graph::from_edges(edges.iter().copied()).unwrap())
    }

    fn atoms(names: &[&str]) -> Vec<Generator> {
        names.iter().map(|n| Generator::atom(*n)).collect()
    }

    fn symmetric_link(u: &str, v: &str) -> CoherentGraph {
        let g = Graph::from_edges([("uv", u, v), ("vu", v, u)]).unwrap();
        CoherentGraph::discrete(g)
    }

    #[test]
    fn tensor_of_points() {
        let [a, b] = <[Generator; 2]>::try_from(atoms(&["a", "b"])).unwrap();
        let t = tensor_graph(&a.test, &b.test).unwrap();
        assert_eq!(t.vertices().len(), 2);
        assert_eq!(t.graph().edge_count(), 0);
        assert!(matches!(tensor_graph(&a.test, &a.test), Err(Error::Location(_))));
    }

    #[test]
    fn tensor_cross_coherent() {
        let t = tensor_graph(&full(&[("e", "a", "b")]), &full(&[("e", "c", "d")])).unwrap();
        let ids: Vec<_> = t.graph().edge_ids().cloned().collect();
        assert_eq!(ids.len(), 2);
        assert!(t.coherence().coherent(&ids[0], &ids[1]));
        let x = execute(&full(&[("e", "a", "b")]), &full(&[("e", "c", "d")])).unwrap();
        assert!(x.graph().graph().equiv(t.graph()));
    }

    #[test]
    fn par_of_points() {
        let t = conduct_tensor_test(&Generator::atom("u"), &Generator::atom("v")).unwrap().test;
        let ends = t.graph().endpoint_multiset();
        assert_eq!(ends.len(), 2);
        assert_eq!(t.coherence().pairs().count(), 0);
        assert_eq!(t.coherence(), &chordless_coherence(t.graph()));
        assert!(is_principal_generator(&t));
    }

    #[test]
    fn par_edge_count() {
        let g = full(&[("e", "a", "b")]);
        let h = full(&[("f", "c", "d"), ("f2", "d", "e")]);
        let p = par_graph(&g, &h).unwrap();
        assert_eq!(p.graph().edge_count(), 1 + 2 + 2 * 2 * 3);
        // every fresh edge is incoherent with everything
        assert_eq!(p.coherence().pairs().count(), 1);
    }

    #[test]
    fn membership() {
        let link = symmetric_link("u", "v");
        let empty = Generator::new(CoherentGraph::empty_on(["u", "v"]));
        assert!(member_of(&link, &empty).unwrap());
        let par = conduct_tensor_test(&Generator::atom("u"), &Generator::atom("v")).unwrap();
        assert!(!member_of(&link, &par).unwrap());
        let w = orthogonal(&link, &par.test).unwrap();
        assert_eq!(w.witness().unwrap().len(), 2);
        assert!(member_of(&CoherentGraph::empty_on(["u", "v"]), &par).unwrap());
        let psi = conduct_par_test(&Generator::atom("u"), &Generator::atom("v")).unwrap();
        assert_eq!(psi.test.graph().edge_count(), 0);
    }

    #[test]
    fn linear_apply_identity() {
        // F links each a_i with its copy b_i; G is a matching on {a0, a1}
        let f = Graph::from_edges([
            ("0>", "a0", "b0"),
            ("0<", "b0", "a0"),
            ("1>", "a1", "b1"),
            ("1<", "b1", "a1"),
        ])
        .unwrap();
        let f = CoherentGraph::with_chordless_coherence(f);
        let g = symmetric_link("a0", "a1");
        let interface: BTreeSet<VertexId> = ["a0", "a1"].into_iter().map(VertexId::from).collect();
        let r = linear_apply(&f, &g, &interface).unwrap();
        let map: BTreeMap<VertexId, VertexId> = [("a0", "b0"), ("a1", "b1")]
            .into_iter()
            .map(|(x, y)| (VertexId::from(x), VertexId::from(y)))
            .collect();
        assert!(r.graph().equiv(&g.graph().rename_vertices(&map).unwrap()));
    }

    #[test]
    fn linear_apply_side_condition() {
        // F has an interface-internal edge a0→a1; G closes it into a 2-cycle
        let f = full(&[("in", "a0", "a1"), ("out", "a1", "b")]);
        let g = full(&[("back", "a1", "a0")]);
        let interface: BTreeSet<VertexId> = ["a0", "a1"].into_iter().map(VertexId::from).collect();
        assert!(matches!(linear_apply(&f, &g, &interface), Err(Error::NotOrthogonal(_))));
    }

    #[test]
    fn linear_apply_empty_argument() {
        let f = full(&[("e", "x", "y"), ("i", "a", "x")]);
        let interface: BTreeSet<VertexId> = [VertexId::from("a")].into();
        let r = linear_apply(&f, &CoherentGraph::empty_on(["a"]), &interface).unwrap();
        assert_eq!(r.graph().endpoint_multiset(), vec![(VertexId::from("x"), VertexId::from("y"))]);
    }

    #[test]
    fn boxplus_basic() {
        let g = full(&[("e", "a", "b")]);
        let h = full(&[("e", "b", "a")]);
        let s = boxplus(&g, &h).unwrap();
        assert_eq!(s.graph().edge_count(), 2);
        assert_eq!(s.coherence().pairs().count(), 0);
        assert!(matches!(boxplus(&g, &CoherentGraph::empty_on(["a"])), Err(Error::Interface(_))));
    }

    #[test]
    fn canonical_forms() {
        let g = full(&[("e1", "a", "b"), ("e2", "b", "c")]);
        assert!(equiv_r(&canonical_form(&g), &g));
        assert_eq!(canonical_form(&g).graph().edge_count(), 2);

        let raw = Graph::from_edges([("e1", "a", "b"), ("e2", "c", "d"), ("e3", "b", "c")]).unwrap();
        let coh = Coherence::from_pairs(raw.edge_ids().cloned(), [("e1".into(), "e2".into())]).unwrap();
        let g = CoherentGraph::new(raw, coh).unwrap();
        let c = canonical_form(&g);
        assert_eq!(c.graph().edge_count(), 3);
        assert_eq!(c.maximal_cliques().len(), 2);
        assert!(equiv_r(&canonical_form(&c), &c));
    }

    #[test]
    fn equiv_r_examples() {
        let g = full(&[("e1", "a", "b")]);
        let dup = full(&[("e1", "a", "b"), ("e2", "a", "b")]);
        assert!(!equiv_r(&g, &dup));

        // cliques {x, y} and {y, z} sharing y, against a separated presentation
        let raw = Graph::from_edges([("x", "a", "b"), ("y", "b", "c"), ("z", "c", "a")]).unwrap();
        let coh =
            Coherence::from_pairs(raw.edge_ids().cloned(), [("x".into(), "y".into()), ("y".into(), "z".into())]).unwrap();
        let shared = CoherentGraph::new(raw, coh).unwrap();
        let separated = boxplus(
            &full(&[("x", "a", "b"), ("y", "b", "c")]),
            &full(&[("y", "b", "c"), ("z", "c", "a")]),
        )
        .unwrap();
        assert!(equiv_r(&shared, &separated));
        assert!(!shared.graph().equiv(separated.graph()));
    }

    #[test]
    fn principal() {
        assert!(!is_principal_generator(&full(&[("e", "a", "b"), ("f", "a", "b")])));
        assert!(is_principal_generator(&CoherentGraph::empty_on(["a", "b"])));
    }
}
