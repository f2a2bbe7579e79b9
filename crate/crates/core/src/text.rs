//! The `.cig` text format and DOT export.
//!
//! ```text
//! # comment
//! vertex a
//! vertex b
//! edge e a b
//! edge f b a
//! coh e f                 # or: coherence full|simple|chordless
//! ```
//!
//! Distinct edges not listed in a `coh` line are incoherent. Explicit pairs
//! and a `coherence` directive cannot be mixed.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use crate::coherence::{chordless_coherence, simple_coherence, Coherence, CoherentGraph};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph};

fn format_error(line: usize, msg: impl Into<String>) -> Error {
    Error::Format { line, msg: msg.into() }
}

pub fn parse_cig(text: &str) -> Result<CoherentGraph> {
    let mut g = Graph::new();
    let mut pairs = Vec::new();
    let mut directive: Option<(usize, String)> = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let words: Vec<&str> = content.split_whitespace().collect();
        match words.as_slice() {
            [] => {}
            ["vertex", v] => {
                g.add_vertex(*v);
            }
            ["edge", id, src, tgt] => {
                g.add_edge(*id, *src, *tgt).map_err(|e| format_error(line, e.to_string()))?;
            }
            ["coh", a, b] => pairs.push((line, EdgeId::from(*a), EdgeId::from(*b))),
            ["coherence", kind] => {
                if let Some((first, _)) = directive {
                    return Err(format_error(line, format!("second coherence directive (first on line {first})")));
                }
                directive = Some((line, kind.to_string()));
            }
            [word, ..] => {
                let msg = match *word {
                    "vertex" => "expected `vertex <name>`".to_string(),
                    "edge" => "expected `edge <id> <src> <dst>`".to_string(),
                    "coh" => "expected `coh <id1> <id2>`".to_string(),
                    "coherence" => "expected `coherence full|simple|chordless`".to_string(),
                    w => format!("unknown declaration `{w}`"),
                };
                return Err(format_error(line, msg));
            }
        }
    }
    let coh = match directive {
        Some((line, _)) if !pairs.is_empty() => {
            return Err(format_error(line, "a coherence directive cannot be combined with `coh` pairs"));
        }
        Some((line, kind)) => match kind.as_str() {
            "full" => Coherence::full(g.edge_ids().cloned()),
            "simple" => simple_coherence(&g),
            "chordless" => chordless_coherence(&g),
            other => return Err(format_error(line, format!("unknown coherence `{other}`"))),
        },
        None => {
            let mut coh = Coherence::discrete(g.edge_ids().cloned());
            for (line, a, b) in pairs {
                coh.add_pair(a, b).map_err(|e| format_error(line, e.to_string()))?;
            }
            coh
        }
    };
    CoherentGraph::new(g, coh)
}

/// Writes vertices, edges and every coherent pair explicitly, in token
/// order, so that [`parse_cig`] reads the same graph back.
pub fn write_cig(g: &CoherentGraph) -> String {
    let mut out = String::new();
    for v in g.vertices() {
        writeln!(out, "vertex {v}").unwrap();
    }
    for (id, e) in g.graph().edges() {
        writeln!(out, "edge {id} {} {}", e.src, e.tgt).unwrap();
    }
    for (a, b) in g.coherence().pairs() {
        writeln!(out, "coh {a} {b}").unwrap();
    }
    out
}

const PALETTE: [&str; 8] = [
    "red", "blue", "darkgreen", "orange", "purple", "brown", "deeppink", "cyan4",
];

/// DOT rendering. Pairs of opposite edges are drawn as one undirected edge;
/// edges are coloured by the first maximal clique containing them.
pub fn to_dot(g: &CoherentGraph) -> String {
    let cliques = g.maximal_cliques();
    let colour = |id: &EdgeId| {
        let k = cliques.iter().position(|c| c.contains(id)).unwrap_or(0);
        PALETTE[k % PALETTE.len()]
    };

    // pair each edge with an earlier unpaired opposite edge, in id order
    let mut pending: BTreeMap<(&str, &str), Vec<&EdgeId>> = BTreeMap::new();
    let mut pairs: BTreeMap<&EdgeId, &EdgeId> = BTreeMap::new();
    for (id, e) in g.graph().edges() {
        let (s, t) = (e.src.as_str(), e.tgt.as_str());
        if s != t {
            if let Some(first) = pending.get_mut(&(t, s)).and_then(|q| q.pop()) {
                pairs.insert(first, id);
                continue;
            }
        }
        pending.entry((s, t)).or_default().insert(0, id);
    }
    let paired: BTreeSet<&EdgeId> = pairs.values().copied().collect();
    let symmetric = pending.values().all(Vec::is_empty);

    let (kind, arrow) = if symmetric { ("graph", "--") } else { ("digraph", "->") };
    let mut out = format!("{kind} G {{\n");
    for v in g.vertices() {
        writeln!(out, "  \"{v}\";").unwrap();
    }
    for (id, e) in g.graph().edges() {
        if paired.contains(id) {
            continue;
        }
        let attrs = match pairs.get(id) {
            Some(other) if !symmetric => format!("label=\"{id} {other}\", color={}, dir=none", colour(id)),
            Some(other) => format!("label=\"{id} {other}\", color={}", colour(id)),
            None => format!("label=\"{id}\", color={}", colour(id)),
        };
        writeln!(out, "  \"{}\" {arrow} \"{}\" [{attrs}];", e.src, e.tgt).unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mll::parse_formula;

    #[test]
    fn round_trip() {
        let text = "# two edges\nvertex a\nvertex b\nvertex c\nedge e a b\nedge f b c # tail\ncoh e f\n";
        let g = parse_cig(text).unwrap();
        assert_eq!(g.graph().edge_count(), 2);
        assert_eq!(g.coherence().pairs().count(), 1);
        assert_eq!(parse_cig(&write_cig(&g)).unwrap(), g);
    }

    #[test]
    fn directives() {
        let base = "vertex a\nvertex b\nvertex c\nedge e a b\nedge f b c\n";
        let full = parse_cig(&format!("{base}coherence full\n")).unwrap();
        assert_eq!(full.coherence().pairs().count(), 1);
        let simple = parse_cig(&format!("{base}coherence simple\n")).unwrap();
        assert_eq!(simple.coherence().pairs().count(), 0);
        let default = parse_cig(base).unwrap();
        assert_eq!(default.coherence().pairs().count(), 0);
        assert!(parse_cig(&format!("{base}coherence full\ncoh e f\n")).is_err());
        assert!(parse_cig(&format!("{base}coherence weird\n")).is_err());
    }

    #[test]
    fn errors_carry_lines() {
        for (text, line) in [
            ("vertex a\nedge e a b\n", 2),
            ("vertex a\nvertex b\nedge e a b\nedge e b a\n", 4),
            ("vertex a\nfoo\n", 2),
            ("vertex a b\n", 1),
            ("vertex a\nvertex b\nedge e a b\ncoh e g\n", 4),
        ] {
            match parse_cig(text) {
                Err(Error::Format { line: got, .. }) => assert_eq!(got, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn dot_of_cograph() {
        let dot = to_dot(&parse_formula("(A|B)*(C|D)").unwrap().cograph());
        assert!(dot.starts_with("graph G {"));
        assert_eq!(dot.matches(" -- ").count(), 4);
        assert_eq!(dot.lines().filter(|l| l.trim_end().ends_with("\";")).count(), 4);
    }

    #[test]
    fn dot_of_directed_graph() {
        let g = parse_cig("vertex a\nvertex b\nedge e a b\nedge f b a\nedge g a b\n").unwrap();
        let dot = to_dot(&g);
        assert!(dot.starts_with("digraph"));
        assert_eq!(dot.matches("dir=none").count(), 1);
        assert_eq!(dot.matches(" -> ").count(), 2);
    }
}
