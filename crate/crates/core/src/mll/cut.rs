use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::mll::proof::Matching;

/// Composes two matchings along their shared vertices by following
/// alternating paths: the result pairs the two ends of every maximal
/// alternating path between vertices outside `shared`.
///
/// Fails with [`Error::Cycle`] if the shared part contains an alternating
/// cycle.
pub fn cut_eliminate(m: &Matching, n: &Matching, shared: &BTreeSet<VertexId>) -> Result<Matching> {
    let common: BTreeSet<VertexId> = m.vertices().intersection(n.vertices()).cloned().collect();
    if &common != shared {
        return Err(Error::Interface(
            "the cut vertices must be exactly the vertices shared by both matchings".into(),
        ));
    }
    let side = |v: &VertexId, left: bool| if left { m.partner(v) } else { n.partner(v) };

    let outside: BTreeSet<VertexId> = m.vertices().symmetric_difference(n.vertices()).cloned().collect();
    let mut pairs = Vec::new();
    for start in &outside {
        let mut left = m.vertices().contains(start);
        let mut v = start;
        let end = loop {
            match side(v, left) {
                None => break None,
                Some(w) if shared.contains(w) => {
                    v = w;
                    left = !left;
                }
                Some(w) => break Some(w),
            }
        };
        if let Some(end) = end {
            if start < end {
                pairs.push((start.clone(), end.clone()));
            }
        }
    }

    for v0 in shared {
        let mut cycle = vec![v0.clone()];
        let mut left = true;
        let mut v = v0;
        while let Some(w) = side(v, left) {
            if !shared.contains(w) {
                break;
            }
            if w == v0 && !left {
                return Err(Error::Cycle(cycle));
            }
            if cycle.len() > 2 * shared.len() {
                break;
            }
            cycle.push(w.clone());
            v = w;
            left = !left;
        }
    }
    Matching::on(outside, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(names: &[&str]) -> BTreeSet<VertexId> {
        names.iter().map(|s| VertexId::from(*s)).collect()
    }

    #[test]
    fn path_of_two() {
        let m = Matching::new([("p", "q")]).unwrap();
        let n = Matching::new([("q", "r")]).unwrap();
        let r = cut_eliminate(&m, &n, &set(&["q"])).unwrap();
        assert_eq!(r, Matching::new([("p", "r")]).unwrap());
    }

    #[test]
    fn forced_cycle() {
        let m = Matching::new([("p", "q")]).unwrap();
        assert!(matches!(cut_eliminate(&m, &m, &set(&["p", "q"])), Err(Error::Cycle(_))));
    }

    #[test]
    fn identity_cut() {
        // M on {a,b,c,d}; the identity links each x with its copy x'
        let m = Matching::new([("a", "c"), ("b", "d")]).unwrap();
        let id = Matching::new([("a", "a'"), ("b", "b'"), ("c", "c'"), ("d", "d'")]).unwrap();
        let r = cut_eliminate(&m, &id, &set(&["a", "b", "c", "d"])).unwrap();
        assert_eq!(r, Matching::new([("a'", "c'"), ("b'", "d'")]).unwrap());
    }

    #[test]
    fn shared_must_match() {
        let m = Matching::new([("p", "q")]).unwrap();
        let n = Matching::new([("q", "r")]).unwrap();
        assert!(matches!(cut_eliminate(&m, &n, &set(&[])), Err(Error::Interface(_))));
    }

    #[test]
    fn longer_cycle() {
        // m: 1-2, 3-4; n: 2-3, 4-1; plus an outside path x-1? no: keep it closed
        let m = Matching::new([("1", "2"), ("3", "4"), ("x", "y")]).unwrap();
        let n = Matching::new([("2", "3"), ("4", "1"), ("y", "z")]).unwrap();
        let r = cut_eliminate(&m, &n, &set(&["1", "2", "3", "4", "y"]));
        match r {
            Err(Error::Cycle(c)) => assert_eq!(c.len(), 4),
            other => panic!("{other:?}"),
        }
    }
}
