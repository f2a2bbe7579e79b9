//! The law suites. Each returns a [`Report`]; the acceptance target and
//! `cig selftest` both run them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use cig_core::conduct::{
    boxplus, canonical_form, conduct_par_test, conduct_tensor_test, equiv_r, is_principal_generator, member_of,
    tensor_graph, Generator,
};
use cig_core::execution::{coherent_cycles, coherent_walks, execute_simple, orthogonal_simple, symmetric_difference};
use cig_core::mll::{
    build_proof, check_correctness, cut_eliminate, sequent_oracle, CorrectnessChecker, Formula, Matching, Verdict,
};
use cig_core::{
    chordless_coherence, execute, orthogonal, plug3_coherent, plug_coherent, simple_coherence, CoherentGraph, Error,
    ExecutedGraph, Graph, Plugging, Tag, TaggedEdge, VertexId,
};

use crate::enumerate::{for_each_shape, label_for, perfect_matchings, shapes};
use crate::gen::{self, GraphShape, Rng8};
use crate::oracle;

const MAX_FAILURES_KEPT: usize = 5;

/// Outcome of one suite.
#[derive(Clone, Debug)]
pub struct Report {
    pub name: &'static str,
    /// Instances actually checked.
    pub checked: usize,
    /// Instances the suite needs to check to count as passed.
    pub required: usize,
    /// Instances drawn but outside the law's hypotheses.
    pub skipped: usize,
    pub failed: usize,
    /// The first few failures.
    pub failures: Vec<String>,
    pub detail: String,
}

impl Report {
    fn new(name: &'static str, required: usize) -> Self {
        Report {
            name,
            checked: 0,
            required,
            skipped: 0,
            failed: 0,
            failures: Vec::new(),
            detail: String::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0 && self.checked >= self.required
    }

    fn fail(&mut self, msg: impl Into<String>) {
        self.failed += 1;
        if self.failures.len() < MAX_FAILURES_KEPT {
            self.failures.push(msg.into());
        }
    }

    /// Records one checked instance; `problem` is `Some` on failure.
    fn record(&mut self, problem: Option<String>) {
        self.checked += 1;
        if let Some(p) = problem {
            self.fail(p);
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {}: {} checked", self.name, self.checked)?;
        if self.skipped > 0 {
            write!(f, ", {} skipped", self.skipped)?;
        }
        if self.failed > 0 {
            write!(f, ", {} failed", self.failed)?;
        }
        if self.checked < self.required {
            write!(f, " (needed {})", self.required)?;
        }
        if !self.detail.is_empty() {
            write!(f, "; {}", self.detail)?;
        }
        for msg in &self.failures {
            write!(f, "\n    {msg}")?;
        }
        Ok(())
    }
}

fn matching_on_leaves(pairs: &[(usize, usize)]) -> Matching {
    Matching::new(pairs.iter().map(|&(i, j)| (i.to_string(), j.to_string()))).unwrap()
}

/// Graph correctness against the sequent calculus with Mix, for every
/// formula shape with an even number of leaves up to `max_leaves` and every
/// perfect matching of its leaves.
pub fn correctness_agrees_with_sequents(max_leaves: usize) -> Report {
    let mut r = Report::new("correctness = sequent provability (with Mix)", 1);
    let mut counts = Vec::new();
    for n in (2..=max_leaves).step_by(2) {
        let matchings: Vec<(Vec<(usize, usize)>, Matching)> = perfect_matchings(n)
            .into_iter()
            .map(|p| {
                let m = matching_on_leaves(&p);
                (p, m)
            })
            .collect();
        let mut correct = 0usize;
        let mut formulas = 0usize;
        for_each_shape(n, &mut |f| {
            formulas += 1;
            let cograph = f.cograph();
            let checker = CorrectnessChecker::new(&cograph);
            for (pairs, m) in &matchings {
                let graph_says = checker.check(m).is_correct();
                let labelled = label_for(&f, pairs);
                let problem = match sequent_oracle(&labelled, pairs, true) {
                    Ok(oracle_says) if oracle_says == graph_says => None,
                    Ok(oracle_says) => Some(format!(
                        "{labelled} links {pairs:?}: graph says {graph_says}, sequents say {oracle_says}"
                    )),
                    Err(e) => Some(format!("{labelled} links {pairs:?}: oracle error {e}")),
                };
                correct += graph_says as usize;
                r.record(problem);
            }
        });
        counts.push(format!("n={n}: {formulas}x{} ({correct} correct)", matchings.len()));
    }
    r.detail = counts.join(", ");
    r
}

/// Same check as [`correctness_agrees_with_sequents`] through the one-shot
/// [`check_correctness`], on random instances.
pub fn correctness_sampled(seed: u64, cases: usize, max_leaves: usize) -> Report {
    let mut r = Report::new("correctness = sequent provability, sampled", cases);
    let mut rng = gen::rng(seed);
    for _ in 0..cases {
        let n = 2 * rng.gen_range(1..=max_leaves / 2);
        let pairs = gen::random_pairs(&mut rng, n);
        let f = label_for(&gen::random_shape(&mut rng, n), &pairs);
        let verdict = check_correctness(&build_proof(&f, &pairs).unwrap());
        let oracle = sequent_oracle(&f, &pairs, true).unwrap();
        r.record((verdict.is_correct() != oracle).then(|| format!("{f} links {pairs:?}")));
    }
    r
}

fn tagged(tag: u8, id: &cig_core::EdgeId) -> TaggedEdge {
    TaggedEdge::new(Tag(tag), id.clone())
}

/// Maps each result edge to its walk over `F □ G □ H`.
fn flatten(
    outer: &ExecutedGraph,
    inner: &ExecutedGraph,
    inner_tag: u8,
    outer_tag: [u8; 2],
) -> BTreeMap<Vec<TaggedEdge>, cig_core::EdgeId> {
    let mut out = BTreeMap::new();
    for (id, walk) in outer.provenance() {
        let mut seq = Vec::new();
        for te in &walk.edges {
            if te.tag.0 == inner_tag {
                let w = inner.walk(&te.id).expect("inner provenance");
                seq.extend(w.edges.iter().map(|x| tagged(x.tag.0 + outer_tag[0], &x.id)));
            } else {
                seq.push(tagged(outer_tag[1], &te.id));
            }
        }
        out.insert(seq, id.clone());
    }
    out
}

fn is_coherent_alternating(p: &Plugging, edges: &[TaggedEdge]) -> bool {
    edges.windows(2).all(|w| w[0].tag != w[1].tag && p.edge(&w[0]).unwrap().tgt == p.edge(&w[1]).unwrap().src)
        && oracle::pairwise_coherent(p, edges)
}

enum Executed {
    Done(ExecutedGraph),
    Diverged,
}

fn exec(g: &CoherentGraph, h: &CoherentGraph) -> Result<Executed, Error> {
    match execute(g, h) {
        Ok(x) => Ok(Executed::Done(x)),
        Err(Error::DivergentExecution(_)) => Ok(Executed::Diverged),
        Err(e) => Err(e),
    }
}

fn associativity_instance(f: &CoherentGraph, g: &CoherentGraph, h: &CoherentGraph) -> Result<Option<String>, Error> {
    let (fg, gh) = match (exec(f, g)?, exec(g, h)?) {
        (Executed::Done(fg), Executed::Done(gh)) => (fg, gh),
        _ => return Ok(None),
    };
    let (left, right) = match (exec(fg.graph(), h)?, exec(f, gh.graph())?) {
        (Executed::Done(l), Executed::Done(r)) => (l, r),
        _ => return Ok(None),
    };
    let mut problems = Vec::new();
    if left.graph().vertices() != right.graph().vertices() {
        problems.push("vertex sets differ".to_string());
    }
    let lf = flatten(&left, &fg, 0, [0, 2]);
    let rf = flatten(&right, &gh, 1, [1, 0]);
    if lf.len() != left.graph().graph().edge_count() || rf.len() != right.graph().graph().edge_count() {
        problems.push("two result edges flatten to the same walk".to_string());
    }
    if lf.keys().ne(rf.keys()) {
        problems.push(format!("flattened walks differ: {} vs {}", lf.len(), rf.len()));
    } else {
        let p3 = plug3_coherent(f, g, h);
        let (lg, rg) = (left.graph(), right.graph());
        let keys: Vec<_> = lf.keys().collect();
        for (i, k) in keys.iter().enumerate() {
            let (a, b) = (&lf[*k], &rf[*k]);
            let (ea, eb) = (lg.graph().edge(a).unwrap(), rg.graph().edge(b).unwrap());
            if ea != eb {
                problems.push(format!("endpoints of {a} and {b} differ"));
            }
            if !is_coherent_alternating(&p3, k) {
                problems.push(format!("{a} does not flatten to a coherent alternating walk"));
            }
            for k2 in &keys[i + 1..] {
                let l = lg.coherence().coherent(a, &lf[*k2]);
                let r = rg.coherence().coherent(b, &rf[*k2]);
                if l != r {
                    problems.push(format!("coherence of {a},{} differs from {b},{}", lf[*k2], rf[*k2]));
                }
            }
        }
    }
    Ok(Some(problems.join("; ")))
}

/// Random vertex sets for three graphs: every vertex is in one or two of
/// them, never all three.
fn three_way_vertices(rng: &mut Rng8, max_each: usize) -> [Vec<VertexId>; 3] {
    const MEMBERSHIP: [u8; 6] = [1, 2, 4, 3, 5, 6];
    loop {
        let pool = gen::vertex_names("v", rng.gen_range(3..=12));
        let mut sets: [Vec<VertexId>; 3] = Default::default();
        for v in pool {
            let m = MEMBERSHIP[rng.gen_range(0..MEMBERSHIP.len())];
            for (k, set) in sets.iter_mut().enumerate() {
                if m >> k & 1 == 1 {
                    set.push(v.clone());
                }
            }
        }
        if sets.iter().all(|s| !s.is_empty() && s.len() <= max_each) {
            return sets;
        }
    }
}

/// `(F :: G) :: H` and `F :: (G :: H)` have the same vertices and the same
/// edges once every edge is unfolded into its walk over `F □ G □ H`, with the
/// same coherence between them.
pub fn associativity(seed: u64, cases: usize) -> Report {
    let mut r = Report::new("associativity of execution", cases);
    let mut rng = gen::rng(seed);
    let shape = GraphShape::new(12, true);
    let mut nonempty = 0;
    while r.checked < cases && r.checked + r.skipped < 20 * cases {
        let [vf, vg, vh] = three_way_vertices(&mut rng, 8);
        let p = rng.gen_range(0.1..0.9);
        let f = gen::random_coherent(&mut rng, &vf, shape, "f", p);
        let g = gen::random_coherent(&mut rng, &vg, shape, "g", p);
        let h = gen::random_coherent(&mut rng, &vh, shape, "h", p);
        match associativity_instance(&f, &g, &h) {
            Ok(None) => r.skipped += 1,
            Ok(Some(problems)) => {
                if problems.is_empty() {
                    nonempty += execute(&execute(&f, &g).unwrap().into_graph(), &h)
                        .map(|x| (x.graph().graph().edge_count() > 0) as usize)
                        .unwrap_or(0);
                }
                r.record((!problems.is_empty()).then_some(problems));
            }
            Err(e) => r.record(Some(format!("unexpected error: {e}"))),
        }
    }
    r.detail = format!("{nonempty} with a non-empty result; divergent triples skipped");
    r
}

fn adjunction_instance(f: &CoherentGraph, g: &CoherentGraph, h: &CoherentGraph) -> Result<(bool, bool), Error> {
    let lhs = orthogonal(f, &tensor_graph(g, h)?)?.is_orthogonal();
    let padded = tensor_graph(g, &CoherentGraph::empty_on(h.vertices().iter().cloned()))?;
    let rhs = orthogonal(f, &padded)?.is_orthogonal() && orthogonal(execute(f, g)?.graph(), h)?.is_orthogonal();
    Ok((lhs, rhs))
}

/// With `V(F) = V(G) ⊔ V(H)`: `F ⊥ G ⊗ H` iff `F ⊥ G ⊗ ∅` and `F :: G ⊥ H`.
pub fn adjunction(seed: u64, cases: usize) -> Report {
    let mut r = Report::new("adjunction of tensor and execution", cases);
    let mut rng = gen::rng(seed);
    let shape = GraphShape::new(12, true);
    let mut orthogonal_count = 0;
    while r.checked < cases {
        let all = gen::vertex_names("v", rng.gen_range(2..=8));
        let split = rng.gen_range(1..all.len());
        let (vg, vh) = all.split_at(split);
        let p = rng.gen_range(0.1..0.9);
        let f = gen::random_coherent(&mut rng, &all, shape, "f", p);
        let g = gen::random_coherent(&mut rng, vg, shape, "g", p);
        let h = gen::random_coherent(&mut rng, vh, shape, "h", p);
        let problem = match adjunction_instance(&f, &g, &h) {
            Ok((lhs, rhs)) => {
                orthogonal_count += lhs as usize;
                (lhs != rhs).then(|| format!("F ⊥ G⊗H is {lhs} but the split side is {rhs}"))
            }
            Err(e) => Some(format!("unexpected error: {e}")),
        };
        r.record(problem);
    }
    r.detail = format!("{orthogonal_count} orthogonal, {} not", r.checked - orthogonal_count);
    r
}

/// Vertex sets for two graphs that overlap somewhere; `equal` makes them the
/// same set.
fn two_way_vertices(rng: &mut Rng8, max: usize, equal: bool) -> (Vec<VertexId>, Vec<VertexId>) {
    loop {
        let pool = gen::vertex_names("v", rng.gen_range(2..=max));
        if equal {
            return (pool.clone(), pool);
        }
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for v in pool {
            let m = rng.gen_range(1..=3u8);
            if m & 1 == 1 {
                a.push(v.clone());
            }
            if m & 2 == 2 {
                b.push(v);
            }
        }
        if !a.is_empty() && !b.is_empty() {
            return (a, b);
        }
    }
}

fn closed_and_simple(t: &oracle::Trail) -> bool {
    let n = t.edges.len();
    let distinct: BTreeSet<_> = t.vertices[..n].iter().collect();
    t.vertices[0] == t.vertices[n] && distinct.len() == n && t.edges[0].tag != t.edges[n - 1].tag
}

fn simplicity_instance(g: &CoherentGraph, h: &CoherentGraph) -> Vec<String> {
    let mut problems = Vec::new();
    let p = plug_coherent(g, h);
    for t in oracle::trails(&p, true, false) {
        if !t.is_simple() && !closed_and_simple(&t) {
            problems.push(format!("coherent walk {:?} is not simple", t.edges));
        }
    }
    let boundary = symmetric_difference(g.vertices(), h.vertices());
    match coherent_walks(&p, &boundary) {
        Ok(walks) => {
            if let Some(w) = walks.iter().find(|w| !w.is_simple()) {
                problems.push(format!("engine walk {w} is not simple"));
            }
        }
        Err(e) => problems.push(format!("walk search failed: {e}")),
    }
    if let Some(c) = coherent_cycles(&p).iter().find(|c| !c.is_simple()) {
        problems.push(format!("engine cycle {c} is not simple"));
    }
    match execute(g, h) {
        Ok(x) if !x.graph().is_simple() => problems.push("the execution is not simple".into()),
        Ok(_) => {}
        Err(e) => problems.push(format!("execution failed: {e}")),
    }

    // converse, with both sides carrying exactly the simple coherence
    let gs = CoherentGraph::new(g.graph().clone(), simple_coherence(g.graph())).unwrap();
    let hs = CoherentGraph::new(h.graph().clone(), simple_coherence(h.graph())).unwrap();
    let ps = plug_coherent(&gs, &hs);
    for t in oracle::trails(&ps, false, true) {
        if !oracle::pairwise_coherent(&ps, &t.edges) {
            problems.push(format!("simple walk {:?} is incoherent", t.edges));
        }
    }
    for c in oracle::simple_cycles(&ps) {
        if !oracle::pairwise_coherent(&ps, &c) {
            problems.push(format!("simple cycle {c:?} is incoherent"));
        }
    }
    problems.truncate(3);
    problems
}

/// Simple coherent graphs: coherent walks and cycles are simple, execution
/// never diverges and stays simple; under the simple coherences every simple
/// walk and cycle is coherent. Graphs have no loops.
pub fn simplicity(seed: u64, cases: usize) -> Report {
    let mut r = Report::new("simple graphs and simple paths", cases);
    let mut rng = gen::rng(seed);
    let shape = GraphShape::new(9, false);
    while r.checked < cases {
        let equal = rng.gen_bool(0.3);
        let (va, vb) = two_way_vertices(&mut rng, 7, equal);
        let p = rng.gen_range(0.3..1.0);
        let ga = gen::random_graph(&mut rng, &va, shape, "g");
        let gb = gen::random_graph(&mut rng, &vb, shape, "h");
        let ca = gen::random_simple_coherence(&mut rng, &ga, p);
        let cb = gen::random_simple_coherence(&mut rng, &gb, p);
        let g = CoherentGraph::new(ga, ca).unwrap();
        let h = CoherentGraph::new(gb, cb).unwrap();
        let problems = simplicity_instance(&g, &h);
        r.record((!problems.is_empty()).then(|| problems.join("; ")));
    }
    r
}

/// Compares the engine's coherent cycles with the enumerated simple cycles
/// that pass `keep`.
fn cycle_sets_agree(p: &Plugging, keep: impl Fn(&[TaggedEdge]) -> bool) -> (usize, usize, Option<String>) {
    let engine: BTreeSet<Vec<TaggedEdge>> =
        coherent_cycles(p).iter().map(|w| oracle::canonical_rotation(&w.edges)).collect();
    let all = oracle::simple_cycles(p);
    let expected: BTreeSet<Vec<TaggedEdge>> = all.iter().filter(|c| keep(c)).cloned().collect();
    let problem = (engine != expected).then(|| {
        format!(
            "engine found {} cycles, enumeration {}; first difference {:?}",
            engine.len(),
            expected.len(),
            engine.symmetric_difference(&expected).next()
        )
    });
    (engine.len(), all.len(), problem)
}

/// Two chordless-coherent graphs on the same vertices that are never
/// adjacent on the same vertex pair. An alternating cycle through some of the
/// vertices is planted, then each graph gets random edges on its own pairs.
fn pairs_apart(rng: &mut Rng8) -> (CoherentGraph, CoherentGraph) {
    let n = rng.gen_range(4..=8);
    let mut vs = gen::vertex_names("v", n);
    vs.shuffle(rng);
    let k = 2 * rng.gen_range(2..=n / 2);
    let mut owner = BTreeMap::new();
    for i in 0..k {
        let (u, v) = (&vs[i], &vs[(i + 1) % k]);
        owner.insert((u.min(v).clone(), u.max(v).clone()), i % 2 == 0);
    }
    let (mut mine, mut yours) = (Vec::new(), Vec::new());
    for (i, u) in vs.iter().enumerate() {
        for v in &vs[i + 1..] {
            let key = (u.min(v).clone(), u.max(v).clone());
            let side = *owner.entry(key.clone()).or_insert_with(|| rng.gen_bool(0.5));
            if side { &mut mine } else { &mut yours }.push(key);
        }
    }
    let shape = GraphShape {
        mirror: 0.3,
        ..GraphShape::new(n / 2 + 1, false)
    };
    let mut g = gen::random_graph_on_pairs(rng, &vs, &mine, shape, "g");
    let mut h = gen::random_graph_on_pairs(rng, &vs, &yours, shape, "h");
    for i in 0..k {
        let (u, v) = (vs[i].clone(), vs[(i + 1) % k].clone());
        let (graph, prefix) = if i % 2 == 0 { (&mut g, "gc") } else { (&mut h, "hc") };
        graph.add_edge(format!("{prefix}{i}"), u, v).unwrap();
    }
    (
        CoherentGraph::with_chordless_coherence(g),
        CoherentGraph::with_chordless_coherence(h),
    )
}

/// Under the chordless coherences, the coherent cycles are exactly the
/// simple cycles without a chord.
///
/// Taken literally this needs no vertex pair adjacent in both graphs: an edge
/// of one graph alongside a cycle edge of the other joins two consecutive
/// vertices, so it is no chord, yet it makes the cycle incoherent once the
/// cycle has four edges or more. `cases` pairs that share no adjacency are
/// checked literally; as many unrestricted pairs are checked with such edges
/// counted as chords.
pub fn chordless_cycles(seed: u64, cases: usize) -> Report {
    let mut r = Report::new("coherent cycles = simple chordless cycles", cases);
    let mut rng = gen::rng(seed);
    let shape = GraphShape {
        mirror: 1.0,
        ..GraphShape::new(12, false)
    };
    let (mut cycles, mut simple, mut widened_cycles, mut literal_off) = (0, 0, 0, 0);
    while r.checked < cases {
        let equal = rng.gen_bool(1.0);
        let (va, vb) = two_way_vertices(&mut rng, 8, equal);
        let g = gen::random_chordless(&mut rng, &va, shape, "g");
        let h = gen::random_chordless(&mut rng, &vb, shape, "h");

        let p = plug_coherent(&g, &h);
        let chordless = |c: &[TaggedEdge]| !oracle::has_chord(&p, &oracle::cycle_vertices(&p, c));
        literal_off += cycle_sets_agree(&p, chordless).2.is_some() as usize;
        let (found, _, problem) = cycle_sets_agree(&p, |c| chordless(c) && !oracle::has_cross_parallel(&p, c));
        widened_cycles += found;
        if let Some(problem) = problem {
            r.fail(format!("with widened chords: {problem}"));
        }

        let (g, h) = pairs_apart(&mut rng);
        let p = plug_coherent(&g, &h);
        let (found, all, problem) =
            cycle_sets_agree(&p, |c| !oracle::has_chord(&p, &oracle::cycle_vertices(&p, c)));
        cycles += found;
        simple += all;
        r.record(problem);
    }
    r.detail = format!(
        "{cycles} coherent cycles among {simple} simple ones; on unrestricted pairs {widened_cycles} \
         coherent cycles matched widened chords, the literal reading differed on {literal_off} pairs"
    );
    r
}

fn combinations(n: usize, k: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return visit(cur);
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            if go(n, k, i + 1, cur, visit) {
                return true;
            }
            cur.pop();
        }
        false
    }
    go(n, k, 0, &mut Vec::new(), visit)
}

fn directed_pairs(from: &[VertexId], to: &[VertexId]) -> Vec<(VertexId, VertexId)> {
    from.iter()
        .flat_map(|u| to.iter().filter(move |v| *v != u).map(move |v| (u.clone(), v.clone())))
        .collect()
}

fn full_graph(vertices: &[VertexId], edges: &[(VertexId, VertexId)], pick: &[usize], prefix: &str) -> CoherentGraph {
    let mut g = Graph::empty_on(vertices.iter().cloned());
    for (k, &i) in pick.iter().enumerate() {
        let (u, v) = &edges[i];
        g.add_edge(format!("{prefix}{k}"), u.clone(), v.clone()).unwrap();
    }
    CoherentGraph::full(g)
}

/// A triple found by [`simple_adjunction_counterexample`].
pub struct Counterexample {
    pub f: CoherentGraph,
    pub g: CoherentGraph,
    pub h: CoherentGraph,
    pub searched: usize,
}

/// Searches, by increasing vertex count and then edge count, for `F, G, H`
/// under full coherence with `F ⊥ₛ G ⊗ H` but not `F ::ₛ G ⊥ₛ H`.
///
/// The family: `V(G) ⊔ V(H)` with at most six vertices, `F` with at most four
/// edges each joining `V(G)` and `V(H)`, `G` and `H` with at most two edges,
/// no loops, all directions.
pub fn simple_adjunction_counterexample() -> Option<Counterexample> {
    let mut searched = 0;
    for total in 2..=6 {
        for ng in 1..total {
            let vg = gen::vertex_names("g", ng);
            let vh = gen::vertex_names("h", total - ng);
            let all: Vec<VertexId> = vg.iter().chain(&vh).cloned().collect();
            let mut f_cand = directed_pairs(&vg, &vh);
            f_cand.extend(directed_pairs(&vh, &vg));
            let g_cand = directed_pairs(&vg, &vg);
            let h_cand = directed_pairs(&vh, &vh);
            for k in 0..=8 {
                for kf in 0..=k.min(4) {
                    for kg in 0..=(k - kf).min(2) {
                        let kh = k - kf - kg;
                        if kh > 2 {
                            continue;
                        }
                        let mut found = None;
                        combinations(f_cand.len(), kf, &mut |fp| {
                            let f = full_graph(&all, &f_cand, fp, "f");
                            combinations(g_cand.len(), kg, &mut |gp| {
                                let g = full_graph(&vg, &g_cand, gp, "g");
                                combinations(h_cand.len(), kh, &mut |hp| {
                                    let h = full_graph(&vh, &h_cand, hp, "h");
                                    searched += 1;
                                    let gh = tensor_graph(&g, &h).unwrap();
                                    if orthogonal_simple(&f, &gh).unwrap().is_orthogonal()
                                        && !orthogonal_simple(execute_simple(&f, &g).graph(), &h).unwrap().is_orthogonal()
                                    {
                                        found = Some((f.clone(), g.clone(), h));
                                        return true;
                                    }
                                    false
                                })
                            })
                        });
                        if let Some((f, g, h)) = found {
                            return Some(Counterexample { f, g, h, searched });
                        }
                    }
                }
            }
        }
    }
    None
}

/// The simple-path adjunction fails somewhere in the search family, while
/// the coherent one holds on the same triple.
pub fn simple_adjunction_fails() -> Report {
    let mut r = Report::new("simple-path adjunction has a counterexample", 1);
    match simple_adjunction_counterexample() {
        None => r.fail("no counterexample in the search family"),
        Some(c) => {
            r.checked = 1;
            let coherent = adjunction_instance(&c.f, &c.g, &c.h);
            let edges = |g: &CoherentGraph| {
                g.graph()
                    .edges()
                    .map(|(_, e)| format!("{}>{}", e.src, e.tgt))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            r.detail = format!(
                "after {} triples: F=[{}] G=[{}] H=[{}]",
                c.searched,
                edges(&c.f),
                edges(&c.g),
                edges(&c.h)
            );
            match coherent {
                Ok((lhs, rhs)) if lhs == rhs => {}
                Ok(_) => r.fail("the coherent adjunction fails on the counterexample"),
                Err(e) => r.fail(format!("coherent adjunction errored: {e}")),
            }
        }
    }
    r
}

/// Every formula with at most `max_leaves` leaves: the cograph's coherence
/// is its chordless coherence, it has no parallel edges, at most `|V|²`
/// edges, and its undirected graph has no induced path on four vertices.
/// Up to `literal_up_to` leaves the construction is also compared with the
/// node-by-node one and the chordless coherence with its literal definition.
pub fn cograph_laws(max_leaves: usize, literal_up_to: usize) -> Report {
    let mut r = Report::new("formula cographs are chordless, principal, P4-free", 1);
    for n in 1..=max_leaves {
        for_each_shape(n, &mut |f| {
            let g = f.cograph();
            let mut problems = Vec::new();
            if g.coherence() != &chordless_coherence(g.graph()) {
                problems.push("coherence is not the chordless coherence");
            }
            if !is_principal_generator(&g) {
                problems.push("parallel edges");
            }
            if g.graph().edge_count() > n * n {
                problems.push("more than |V|² edges");
            }
            if !oracle::is_p4_free(&oracle::adjacency(g.graph())) {
                problems.push("induced P4");
            }
            if n <= literal_up_to {
                if g != f.cograph_by_constructions() {
                    problems.push("differs from the node-by-node construction");
                }
                let literal = oracle::chordless_incoherent_pairs(g.graph());
                let ids: Vec<_> = g.graph().edge_ids().collect();
                let agrees = ids.iter().enumerate().all(|(i, a)| {
                    ids[i + 1..]
                        .iter()
                        .all(|b| g.coherence().coherent(a, b) != literal.contains(&((*a).clone(), (*b).clone())))
                });
                if !agrees {
                    problems.push("coherence differs from the literal chordless definition");
                }
            }
            r.record((!problems.is_empty()).then(|| format!("{f}: {}", problems.join(", "))));
        });
    }
    r.detail = format!("all shapes with 1..={max_leaves} leaves");
    r
}

fn quotient_instance(rng: &mut Rng8) -> Vec<String> {
    let shape = GraphShape::new(8, true);
    let vs = gen::vertex_names("v", rng.gen_range(1..=6));
    let p = rng.gen_range(0.2..0.9);
    let [f, g, h, k] = ["f", "g", "h", "k"].map(|x| gen::random_coherent(rng, &vs, shape, x, p));
    let mut problems = Vec::new();

    let cf = canonical_form(&g);
    if !equiv_r(&g, &cf) {
        problems.push("G is not equivalent to its canonical form".to_string());
    }
    if !equiv_r(&canonical_form(&cf), &cf) {
        problems.push("canonical form is not idempotent".to_string());
    }
    let web: Vec<_> = g.graph().edge_ids().cloned().collect();
    let brute = oracle::brute_force_cliques(&web, |a, b| g.coherence().coherent(a, b));
    let engine: BTreeSet<_> = g.maximal_cliques().into_iter().collect();
    if brute != engine {
        problems.push("maximal cliques differ from subset enumeration".to_string());
    }

    let gh = boxplus(&g, &h).unwrap();
    if !equiv_r(&gh, &boxplus(&h, &g).unwrap()) {
        problems.push("⊞ is not commutative".to_string());
    }
    let left = boxplus(&gh, &k).unwrap();
    let right = boxplus(&g, &boxplus(&h, &k).unwrap()).unwrap();
    if !equiv_r(&left, &right) {
        problems.push("⊞ is not associative".to_string());
    }

    let orth = |x: &CoherentGraph| orthogonal(&f, x).unwrap().is_orthogonal();
    if orth(&gh) != (orth(&g) && orth(&h)) {
        problems.push("orthogonality to G ⊞ H does not split".to_string());
    }
    if orth(&cf) != orth(&g) {
        problems.push("the canonical form is distinguished by orthogonality".to_string());
    }
    problems
}

/// Canonical forms, ⊞ up to equivalence, and orthogonality over ⊞.
pub fn quotient(seed: u64, cases: usize) -> Report {
    let mut r = Report::new("maximal-clique quotient", cases);
    let mut rng = gen::rng(seed);
    while r.checked < cases {
        let problems = quotient_instance(&mut rng);
        r.record((!problems.is_empty()).then(|| problems.join("; ")));
    }
    r
}

fn located(shape: &Formula, prefix: &str) -> (Generator, Vec<VertexId>) {
    let n = shape.leaf_count();
    let names = gen::vertex_names(prefix, n);
    let map: BTreeMap<VertexId, VertexId> = (0..n).map(|i| (VertexId::from(i.to_string()), names[i].clone())).collect();
    (Generator::new(shape.cograph().rename_vertices(&map).unwrap()), names)
}

/// A random member of the conduct tested by `t`: a perfect matching or a
/// random coherent graph on its vertices, whichever passes first.
fn member(rng: &mut Rng8, t: &Generator, vertices: &[VertexId]) -> Option<CoherentGraph> {
    for _ in 0..50 {
        let candidate = if rng.gen_bool(0.5) {
            gen::random_matching(rng, vertices).graph()
        } else {
            let shape = GraphShape::new(6, false);
            let p = rng.gen_range(0.0..1.0);
            gen::random_coherent(rng, vertices, shape, "x", p)
        };
        if member_of(&candidate, t).unwrap() {
            return Some(candidate);
        }
    }
    None
}

/// `X ∈ A` and `Y ∈ B` give `X ⊗ Y` passing the tests of `A ⅋ B` and of
/// `A ⊗ B`.
pub fn mix_inclusion(seed: u64, cases: usize) -> Report {
    let mut r = Report::new("A ⊗ B included in A ⅋ B", cases);
    let mut rng = gen::rng(seed);
    while r.checked < cases {
        let (na, nb) = (2 * rng.gen_range(1..=3), 2 * rng.gen_range(1..=3));
        let (a, va) = located(&gen::random_shape(&mut rng, na), "a");
        let (b, vb) = located(&gen::random_shape(&mut rng, nb), "b");
        let (Some(x), Some(y)) = (member(&mut rng, &a, &va), member(&mut rng, &b, &vb)) else {
            r.skipped += 1;
            continue;
        };
        let xy = tensor_graph(&x, &y).unwrap();
        let par = member_of(&xy, &conduct_par_test(&a, &b).unwrap()).unwrap();
        let tensor = member_of(&xy, &conduct_tensor_test(&a, &b).unwrap()).unwrap();
        r.record((!(par && tensor)).then(|| format!("X ⊗ Y fails: par test {par}, tensor test {tensor}")));
    }
    r.detail = format!("{} conduct pairs without a member found", r.skipped);
    r.skipped = 0;
    r
}

/// Cutting a matching against the identity on its vertices gives the same
/// matching on the copies, from either side.
pub fn identity_cut(seed: u64, cases: usize) -> Report {
    let mut r = Report::new("cut against the identity", cases);
    let mut rng = gen::rng(seed);
    while r.checked < cases {
        let n = 2 * rng.gen_range(1..=6);
        let vs = gen::vertex_names("v", n);
        let m = gen::random_matching(&mut rng, &vs);
        let copy = |v: &VertexId| VertexId::from(format!("{v}'"));
        let id = Matching::new(vs.iter().map(|v| (v.clone(), copy(v)))).unwrap();
        let expected = Matching::new(m.pairs().map(|(u, v)| (copy(u), copy(v)))).unwrap();
        let shared: BTreeSet<VertexId> = vs.iter().cloned().collect();
        let mut problem = None;
        for (label, result) in [
            ("M;Id", cut_eliminate(&m, &id, &shared)),
            ("Id;M", cut_eliminate(&id, &m, &shared)),
        ] {
            match result {
                Ok(got) if got == expected => {}
                Ok(got) => problem = Some(format!("{label}: got {:?}", got.pairs().collect::<Vec<_>>())),
                Err(e) => problem = Some(format!("{label}: {e}")),
            }
        }
        r.record(problem);
    }
    r
}

/// Union-find with parity: leaves in one class carry the same atom, parity
/// says the polarity.
struct Polarity {
    parent: Vec<usize>,
    flip: Vec<bool>,
}

impl Polarity {
    fn new(n: usize) -> Self {
        Polarity {
            parent: (0..n).collect(),
            flip: vec![false; n],
        }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        let mut flip = false;
        let mut y = x;
        while self.parent[y] != y {
            flip ^= self.flip[y];
            y = self.parent[y];
        }
        (y, flip)
    }

    /// Requires `a` and `b` to have opposite polarity. False on conflict.
    fn dual(&mut self, a: usize, b: usize) -> bool {
        let ((ra, fa), (rb, fb)) = (self.find(a), self.find(b));
        if ra == rb {
            return fa != fb;
        }
        self.parent[ra] = rb;
        self.flip[ra] = !(fa ^ fb);
        true
    }
}

/// Atom labels for the leaves, or `None` if the constraints conflict.
fn labelling(n: usize, duals: &[(usize, usize)]) -> Option<Vec<(Arc<str>, bool)>> {
    let mut p = Polarity::new(n);
    for &(a, b) in duals {
        if !p.dual(a, b) {
            return None;
        }
    }
    Some(
        (0..n)
            .map(|x| {
                let (root, flip) = p.find(x);
                (Arc::from(format!("P{root}")), !flip)
            })
            .collect(),
    )
}

fn par_opt(a: Option<&Formula>, b: Option<&Formula>) -> Option<Formula> {
    match (a, b) {
        (Some(a), Some(b)) => Some(Formula::par(a.clone(), b.clone())),
        (x, y) => x.or(y).cloned(),
    }
}

/// Every correct net of `⊢ Γ ⅋ F` cut against every correct net of
/// `⊢ F^⊥ ⅋ Δ` gives a correct net of `⊢ Γ ⅋ Δ`, over all shapes of `Γ`, `F`,
/// `Δ` (contexts possibly empty) with at most `max_total` leaves in the two
/// nets together.
pub fn cut_soundness(max_total: usize) -> Report {
    let mut r = Report::new("cut of correct nets is correct", 1);
    let mut cuts = 0;
    let shapes_of = |n: usize| if n == 0 { vec![None] } else { shapes(n).into_iter().map(Some).collect() };
    for nf in 1..=max_total / 2 {
        for ng in 0..=max_total - 2 * nf {
            for nd in 0..=max_total - 2 * nf - ng {
                let (nl, nr) = (ng + nf, nf + nd);
                if nl % 2 == 1 || nr % 2 == 1 {
                    continue;
                }
                let left_matchings = perfect_matchings(nl);
                let right_matchings = perfect_matchings(nr);
                for gamma in shapes_of(ng) {
                    for f in shapes(nf) {
                        for delta in shapes_of(nd) {
                            let left = par_opt(gamma.as_ref(), Some(&f)).unwrap();
                            let right = par_opt(Some(&f.dual()), delta.as_ref()).unwrap();
                            let rest = par_opt(gamma.as_ref(), delta.as_ref());
                            for lm in &left_matchings {
                                for rm in &right_matchings {
                                    cuts += cut_soundness_instance(
                                        &mut r,
                                        [&left, &right],
                                        rest.as_ref(),
                                        [ng, nf, nd],
                                        [lm, rm],
                                    ) as usize;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    r.detail = format!("{cuts} cuts between correct nets, {} admissible pairs", r.checked);
    r
}

/// Returns whether both nets were correct, so that a cut was made.
fn cut_soundness_instance(
    r: &mut Report,
    [left, right]: [&Formula; 2],
    rest: Option<&Formula>,
    [ng, nf, nd]: [usize; 3],
    [lm, rm]: [&Vec<(usize, usize)>; 2],
) -> bool {
    // leaves: Γ at 0..ng, F at ng..ng+nf, F^⊥ at ng+nf.., Δ after
    let total = ng + 2 * nf + nd;
    let mut duals: Vec<(usize, usize)> = lm.clone();
    duals.extend(rm.iter().map(|&(i, j)| (ng + nf + i, ng + nf + j)));
    // F^⊥ has the same atoms as F with opposite polarities, leaf for leaf
    duals.extend((0..nf).map(|i| (ng + i, ng + nf + i)));
    let Some(labels) = labelling(total, &duals) else {
        return false;
    };
    let left = left.relabel(&labels[..ng + nf]);
    let right = right.relabel(&labels[ng + nf..]);
    let correct = |f: &Formula, m: &[(usize, usize)]| check_correctness(&build_proof(f, m).unwrap()).is_correct();
    if !(correct(&left, lm) && correct(&right, rm)) {
        r.checked += 1;
        return false;
    }
    let name = |side: &str, i: usize| VertexId::from(format!("{side}{i}"));
    let left_vertex = |i: usize| if i < ng { name("g", i) } else { name("x", i - ng) };
    let right_vertex = |i: usize| if i < nf { name("x", i) } else { name("d", i - nf) };
    let m1 = Matching::new(lm.iter().map(|&(i, j)| (left_vertex(i), left_vertex(j)))).unwrap();
    let m2 = Matching::new(rm.iter().map(|&(i, j)| (right_vertex(i), right_vertex(j)))).unwrap();
    let shared: BTreeSet<VertexId> = (0..nf).map(|i| name("x", i)).collect();
    let problem = match cut_eliminate(&m1, &m2, &shared) {
        Err(e) => Some(format!("{left} against {right}: {e}")),
        Ok(m) => match rest {
            None => (!m.is_empty()).then(|| "cut of closed nets left links".to_string()),
            Some(rest) => {
                let index = |v: &VertexId| {
                    let (side, k) = v.as_str().split_at(1);
                    let k: usize = k.parse().unwrap();
                    if side == "g" {
                        k
                    } else {
                        ng + k
                    }
                };
                let pairs: Vec<(usize, usize)> = m.pairs().map(|(u, v)| (index(u), index(v))).collect();
                let mut rest_labels = labels[..ng].to_vec();
                rest_labels.extend_from_slice(&labels[ng + 2 * nf..]);
                let rest = rest.relabel(&rest_labels);
                match build_proof(&rest, &pairs) {
                    Ok(p) => match check_correctness(&p) {
                        Verdict::Correct => None,
                        Verdict::Incorrect(w) => Some(format!("{left} against {right}: {rest} is incorrect, cycle {w}")),
                    },
                    Err(e) => Some(format!("{left} against {right}: result is not a proof structure: {e}")),
                }
            }
        },
    };
    r.record(problem);
    true
}
