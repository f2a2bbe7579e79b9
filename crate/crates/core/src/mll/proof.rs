use std::collections::{BTreeMap, BTreeSet};

use crate::coherence::{Coherence, CoherentGraph};
use crate::conduct::boxplus;
use crate::error::{Error, Result};
use crate::execution::{CycleWitness, Orthogonality, OrthogonalityTester};
use crate::graph::{Graph, VertexId};
use crate::mll::formula::Formula;

/// A partial pairing of vertices: every vertex lies in at most one pair.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Matching {
    vertices: BTreeSet<VertexId>,
    partner: BTreeMap<VertexId, VertexId>,
}

impl Matching {
    /// Pairs over exactly the vertices they mention.
    pub fn new<V: Into<VertexId>>(pairs: impl IntoIterator<Item = (V, V)>) -> Result<Matching> {
        Matching::on(std::iter::empty::<VertexId>(), pairs)
    }

    /// Pairs over a vertex set that may contain unmatched vertices.
    pub fn on<V: Into<VertexId>>(
        vertices: impl IntoIterator<Item = impl Into<VertexId>>,
        pairs: impl IntoIterator<Item = (V, V)>,
    ) -> Result<Matching> {
        let mut m = Matching {
            vertices: vertices.into_iter().map(Into::into).collect(),
            partner: BTreeMap::new(),
        };
        for (u, v) in pairs {
            let (u, v) = (u.into(), v.into());
            if u == v {
                return Err(Error::Link(format!("`{u}` is paired with itself")));
            }
            for x in [&u, &v] {
                if m.partner.contains_key(x) {
                    return Err(Error::Link(format!("`{x}` occurs in two pairs")));
                }
            }
            m.vertices.insert(u.clone());
            m.vertices.insert(v.clone());
            m.partner.insert(u.clone(), v.clone());
            m.partner.insert(v, u);
        }
        Ok(m)
    }

    /// Reads a matching back from a graph whose edges join partners, in one
    /// or both directions.
    pub fn from_graph(g: &Graph) -> Result<Matching> {
        let mut pairs = BTreeSet::new();
        for (id, e) in g.edges() {
            if e.is_loop() {
                return Err(Error::Link(format!("edge `{id}` is a loop")));
            }
            let pair = if e.src < e.tgt {
                (e.src.clone(), e.tgt.clone())
            } else {
                (e.tgt.clone(), e.src.clone())
            };
            pairs.insert(pair);
        }
        Matching::on(g.vertices().iter().cloned(), pairs)
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn partner(&self, v: &VertexId) -> Option<&VertexId> {
        self.partner.get(v)
    }

    /// Pairs `(u, v)` with `u < v`, sorted.
    pub fn pairs(&self) -> impl Iterator<Item = (&VertexId, &VertexId)> + '_ {
        self.partner.iter().filter(|(u, v)| u < v)
    }

    pub fn len(&self) -> usize {
        self.partner.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.partner.is_empty()
    }

    pub fn is_perfect(&self) -> bool {
        self.partner.len() == self.vertices.len()
    }

    /// Each pair `{u, v}` becomes the edges `u>v` and `v>u`. The two edges of
    /// a pair are incoherent, edges of distinct pairs coherent.
    pub fn graph(&self) -> CoherentGraph {
        let mut g = Graph::empty_on(self.vertices.iter().cloned());
        let mut links = Vec::new();
        for (u, v) in self.pairs() {
            let (a, b) = (format!("{u}>{v}"), format!("{v}>{u}"));
            g.add_edge(a.as_str(), u.clone(), v.clone()).unwrap();
            g.add_edge(b.as_str(), v.clone(), u.clone()).unwrap();
            links.push([a, b]);
        }
        let mut coh = Coherence::discrete(g.edge_ids().cloned());
        for (i, x) in links.iter().enumerate() {
            for y in &links[i + 1..] {
                for a in x {
                    for b in y {
                        coh.add_pair(a.as_str().into(), b.as_str().into()).unwrap();
                    }
                }
            }
        }
        CoherentGraph::new(g, coh).unwrap()
    }
}

/// A formula's cograph together with axiom links on its leaves.
#[derive(Clone, Debug)]
pub struct CographicProof {
    pub formula: Formula,
    pub cograph: CoherentGraph,
    pub links: Matching,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Correct,
    Incorrect(CycleWitness),
}

impl Verdict {
    pub fn is_correct(&self) -> bool {
        matches!(self, Verdict::Correct)
    }
}

/// Parses `i-j,k-l` into index pairs.
pub fn parse_links(text: &str) -> Result<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (a, b) = part
            .split_once('-')
            .ok_or_else(|| Error::Link(format!("`{part}` is not of the form i-j")))?;
        let index = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::Link(format!("`{s}` is not a leaf index")))
        };
        out.push((index(a)?, index(b)?));
    }
    Ok(out)
}

/// Checks that `pairs` is a perfect matching on the leaves of `f` linking
/// dual atoms only.
pub fn validate_links(f: &Formula, pairs: &[(usize, usize)]) -> Result<()> {
    let leaves = f.leaves();
    let n = leaves.len();
    let mut seen = vec![false; n];
    for &(i, j) in pairs {
        for k in [i, j] {
            if k >= n {
                return Err(Error::Link(format!("leaf {k} does not exist; the formula has {n} leaves")));
            }
            if seen[k] {
                return Err(Error::Link(format!("leaf {k} is linked twice")));
            }
            seen[k] = true;
        }
        if i == j {
            return Err(Error::Link(format!("leaf {i} is linked to itself")));
        }
    }
    if let Some(k) = seen.iter().position(|s| !s) {
        return Err(Error::Link(format!("leaf {k} is not linked")));
    }
    for &(i, j) in pairs {
        if !leaves[i].is_dual_of(&leaves[j]) {
            return Err(Error::Duality(i, j));
        }
    }
    Ok(())
}

pub fn build_proof(f: &Formula, pairs: &[(usize, usize)]) -> Result<CographicProof> {
    validate_links(f, pairs)?;
    let links = Matching::new(pairs.iter().map(|&(i, j)| (i.to_string(), j.to_string())))?;
    Ok(CographicProof {
        formula: f.clone(),
        cograph: f.cograph(),
        links,
    })
}

/// Correct iff the links are orthogonal to the cograph, i.e. there is no
/// coherent alternating cycle between them. The witness is a shortest cycle.
pub fn check_correctness(p: &CographicProof) -> Verdict {
    CorrectnessChecker::new(&p.cograph).check(&p.links)
}

/// One cograph compiled once, checked against many link sets.
pub struct CorrectnessChecker<'g> {
    tester: OrthogonalityTester<'g>,
}

impl<'g> CorrectnessChecker<'g> {
    pub fn new(cograph: &'g CoherentGraph) -> Self {
        Self {
            tester: OrthogonalityTester::new(cograph),
        }
    }

    /// Panics if the links do not cover exactly the cograph's vertices.
    pub fn check(&self, links: &Matching) -> Verdict {
        match self.tester.check(&links.graph()).expect("cograph and links share the leaves") {
            Orthogonality::Orthogonal => Verdict::Correct,
            Orthogonality::NotOrthogonal(w) => Verdict::Incorrect(w),
        }
    }
}

/// The incoherent sum of several matchings on the same vertices.
pub fn nondet_proof(ps: &[Matching]) -> Result<CoherentGraph> {
    let (first, rest) = ps
        .split_first()
        .ok_or_else(|| Error::Interface("no matchings to sum".into()))?;
    rest.iter().try_fold(first.graph(), |acc, m| boxplus(&acc, &m.graph()))
}
