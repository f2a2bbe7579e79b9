use std::collections::BTreeMap;

use proptest::prelude::*;

use cig_core::text::{parse_cig, write_cig};
use cig_core::{canonical_form, equiv_r, parse_formula, Coherence, CoherentGraph, Formula, Graph, VertexId};

fn formula() -> impl Strategy<Value = Formula> {
    let leaf = ("[a-d]", any::<bool>()).prop_map(|(name, positive)| {
        if positive {
            Formula::atom(&name)
        } else {
            Formula::neg_atom(&name)
        }
    });
    leaf.prop_recursive(4, 16, 2, |inner| {
        (inner.clone(), inner, any::<bool>()).prop_map(|(a, b, tensor)| {
            if tensor {
                Formula::tensor(a, b)
            } else {
                Formula::par(a, b)
            }
        })
    })
}

/// Up to 5 vertices, up to 7 edges, each pair of edges coherent by a coin.
fn coherent_graph() -> impl Strategy<Value = CoherentGraph> {
    (1usize..=5)
        .prop_flat_map(|n| prop::collection::vec((0..n, 0..n), 0..=7).prop_map(move |es| (n, es)))
        .prop_flat_map(|(n, es)| {
            let m = es.len();
            (Just(n), Just(es), prop::collection::vec(any::<bool>(), m * m))
        })
        .prop_map(|(n, es, coins)| {
            let mut g = Graph::empty_on((0..n).map(|i| format!("v{i}")));
            for (k, (s, t)) in es.iter().enumerate() {
                g.add_edge(format!("e{k}"), format!("v{s}"), format!("v{t}")).unwrap();
            }
            let ids: Vec<_> = g.edge_ids().cloned().collect();
            let mut c = Coherence::discrete(ids.iter().cloned());
            for i in 0..ids.len() {
                for j in i + 1..ids.len() {
                    if coins[i * ids.len() + j] {
                        c.add_pair(ids[i].clone(), ids[j].clone()).unwrap();
                    }
                }
            }
            CoherentGraph::new(g, c).unwrap()
        })
}

proptest! {
    #[test]
    fn formula_display_parses_back(f in formula()) {
        prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn dual_is_an_involution(f in formula()) {
        prop_assert_eq!(f.dual().dual(), f.clone());
        prop_assert_eq!(f.dual().leaf_count(), f.leaf_count());
    }

    #[test]
    fn dual_swaps_joined_leaf_pairs(f in formula()) {
        let (g, h) = (f.cograph(), f.dual().cograph());
        prop_assert_eq!(g.vertices(), h.vertices());
        let vs: Vec<_> = g.vertices().iter().cloned().collect();
        let joined = |x: &CoherentGraph, a: &VertexId, b: &VertexId| {
            x.graph().edges().any(|(_, e)| e.src == *a && e.tgt == *b)
        };
        for (i, a) in vs.iter().enumerate() {
            for b in &vs[i + 1..] {
                prop_assert_ne!(joined(&g, a, b), joined(&h, a, b));
            }
        }
    }

    #[test]
    fn cig_text_round_trip(g in coherent_graph()) {
        prop_assert_eq!(parse_cig(&write_cig(&g)).unwrap(), g);
    }

    #[test]
    fn equiv_r_is_an_equivalence(g in coherent_graph(), h in coherent_graph()) {
        prop_assert!(equiv_r(&g, &g));
        prop_assert_eq!(equiv_r(&g, &h), equiv_r(&h, &g));
        let c = canonical_form(&g);
        prop_assert!(equiv_r(&g, &c));
        prop_assert!(equiv_r(&c, &canonical_form(&c)));
    }

    #[test]
    fn renaming_there_and_back(g in coherent_graph()) {
        let there: BTreeMap<VertexId, VertexId> =
            g.vertices().iter().map(|v| (v.clone(), VertexId::from(format!("{v}'")))).collect();
        let back: BTreeMap<VertexId, VertexId> = there.iter().map(|(a, b)| (b.clone(), a.clone())).collect();
        let renamed = g.rename_vertices(&there).unwrap();
        prop_assert!(renamed.vertices().iter().all(|v| v.as_str().ends_with('\'')));
        prop_assert_eq!(renamed.rename_vertices(&back).unwrap(), g);
    }
}
