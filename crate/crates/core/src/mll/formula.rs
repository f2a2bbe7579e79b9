use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::coherence::{Coherence, CoherentGraph};
use crate::conduct::{par_graph, tensor_graph};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph};

/// A unit-free MLL formula in negation normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom { name: Arc<str>, positive: bool },
    Tensor(Box<Formula>, Box<Formula>),
    Par(Box<Formula>, Box<Formula>),
}

/// A leaf of a formula, numbered left to right from 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomOccurrence {
    pub index: usize,
    pub name: Arc<str>,
    pub positive: bool,
}

impl AtomOccurrence {
    pub fn is_dual_of(&self, other: &AtomOccurrence) -> bool {
        self.name == other.name && self.positive != other.positive
    }
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom {
            name: name.into(),
            positive: true,
        }
    }

    pub fn neg_atom(name: &str) -> Formula {
        Formula::Atom {
            name: name.into(),
            positive: false,
        }
    }

    pub fn tensor(a: Formula, b: Formula) -> Formula {
        Formula::Tensor(Box::new(a), Box::new(b))
    }

    pub fn par(a: Formula, b: Formula) -> Formula {
        Formula::Par(Box::new(a), Box::new(b))
    }

    /// De Morgan dual; leaf order is preserved.
    pub fn dual(&self) -> Formula {
        match self {
            Formula::Atom { name, positive } => Formula::Atom {
                name: name.clone(),
                positive: !positive,
            },
            Formula::Tensor(a, b) => Formula::par(a.dual(), b.dual()),
            Formula::Par(a, b) => Formula::tensor(a.dual(), b.dual()),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Formula::Atom { .. } => 1,
            Formula::Tensor(a, b) | Formula::Par(a, b) => a.leaf_count() + b.leaf_count(),
        }
    }

    pub fn leaves(&self) -> Vec<AtomOccurrence> {
        fn go(f: &Formula, out: &mut Vec<AtomOccurrence>) {
            match f {
                Formula::Atom { name, positive } => out.push(AtomOccurrence {
                    index: out.len(),
                    name: name.clone(),
                    positive: *positive,
                }),
                Formula::Tensor(a, b) | Formula::Par(a, b) => {
                    go(a, out);
                    go(b, out);
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }

    /// Replaces the leaves, in order, by the given atoms.
    pub fn relabel(&self, labels: &[(Arc<str>, bool)]) -> Formula {
        fn go(f: &Formula, labels: &[(Arc<str>, bool)], next: &mut usize) -> Formula {
            match f {
                Formula::Atom { .. } => {
                    let (name, positive) = labels[*next].clone();
                    *next += 1;
                    Formula::Atom { name, positive }
                }
                Formula::Tensor(a, b) => {
                    let a = go(a, labels, next);
                    Formula::tensor(a, go(b, labels, next))
                }
                Formula::Par(a, b) => {
                    let a = go(a, labels, next);
                    Formula::par(a, go(b, labels, next))
                }
            }
        }
        assert_eq!(labels.len(), self.leaf_count());
        go(self, labels, &mut 0)
    }

    /// The test of the formula's conduct: leaves are single vertices named
    /// `"0"`, `"1"`, …; a ⅋ is a disjoint union and a ⊗ joins its two blocks
    /// by incoherent edges in both directions.
    pub fn cograph(&self) -> CoherentGraph {
        // Leaves of a subformula are consecutive, so the node where two edges
        // part ways is the meet of their leftmost and rightmost endpoints.
        // Edges are coherent exactly when that node is a ⅋.
        fn meets(f: &Formula, lo: usize, par: &mut [Vec<bool>]) -> usize {
            match f {
                Formula::Atom { .. } => lo + 1,
                Formula::Tensor(a, b) | Formula::Par(a, b) => {
                    let mid = meets(a, lo, par);
                    let hi = meets(b, mid, par);
                    let is_par = matches!(f, Formula::Par(..));
                    for row in &mut par[lo..mid] {
                        row[mid..hi].fill(is_par);
                    }
                    hi
                }
            }
        }
        let n = self.leaf_count();
        let mut par = vec![vec![false; n]; n];
        meets(self, 0, &mut par);
        let names: Vec<String> = (0..n).map(|v| v.to_string()).collect();
        let mut edges: Vec<(EdgeId, usize, usize)> = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if !par[u][v] {
                    edges.push((format!("{u}>{v}").into(), u, v));
                    edges.push((format!("{v}>{u}").into(), v, u));
                }
            }
        }
        edges.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let mut graph = Graph::empty_on(names.iter().map(String::as_str));
        let mut rows = vec![FixedBitSet::with_capacity(edges.len()); edges.len()];
        for (i, (id, u, v)) in edges.iter().enumerate() {
            graph.add_edge(id.clone(), names[*u].as_str(), names[*v].as_str()).expect("fresh edge ids");
            rows[i].insert(i);
            for (j, (_, x, y)) in edges.iter().enumerate().skip(i + 1) {
                let lo = *u.min(v).min(x).min(y);
                let hi = *u.max(v).max(x).max(y);
                if lo != hi && par[lo][hi] {
                    rows[i].insert(j);
                    rows[j].insert(i);
                }
            }
        }
        CoherentGraph::new_unchecked(graph, Coherence::from_rows(edges.into_iter().map(|e| e.0).collect(), rows))
    }

    /// The same graph as [`Formula::cograph`], assembled with
    /// [`par_graph`] and [`tensor_graph`] node by node.
    pub fn cograph_by_constructions(&self) -> CoherentGraph {
        fn go(f: &Formula, next: &mut usize) -> CoherentGraph {
            match f {
                Formula::Atom { .. } => {
                    let v = next.to_string();
                    *next += 1;
                    CoherentGraph::empty_on([v])
                }
                Formula::Par(a, b) => {
                    let a = go(a, next);
                    tensor_graph(&a, &go(b, next)).unwrap()
                }
                Formula::Tensor(a, b) => {
                    let a = go(a, next);
                    par_graph(&a, &go(b, next)).unwrap()
                }
            }
        }
        go(self, &mut 0)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(x: &Formula, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match x {
                Formula::Atom { .. } => write!(f, "{x}"),
                _ => write!(f, "({x})"),
            }
        }
        match self {
            Formula::Atom { name, positive: true } => write!(f, "{name}"),
            Formula::Atom { name, positive: false } => write!(f, "{name}^"),
            Formula::Tensor(a, b) => {
                child(a, f)?;
                f.write_str(" * ")?;
                child(b, f)
            }
            Formula::Par(a, b) => {
                child(a, f)?;
                f.write_str(" | ")?;
                child(b, f)
            }
        }
    }
}

impl std::str::FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Formula> {
        parse_formula(s)
    }
}

/// Parses `*` (or `⊗`) for tensor, `|` (or `⅋`) for par, postfix `^` for
/// duals and parentheses. `*` binds tighter than `|`; both associate to the
/// left. Duals of compound formulas are pushed to the atoms.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut p = Parser {
        tokens: lex(text)?,
        at: 0,
        end: text.len(),
    };
    let f = p.par()?;
    match p.peek() {
        None => Ok(f),
        Some((pos, tok)) => Err(syntax(pos, format!("unexpected {tok}"))),
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Star,
    Bar,
    Hat,
    Open,
    Close,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Bar => f.write_str("`|`"),
            Tok::Hat => f.write_str("`^`"),
            Tok::Open => f.write_str("`(`"),
            Tok::Close => f.write_str("`)`"),
        }
    }
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { pos, msg: msg.into() }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some((pos, c)) = chars.next() {
        let tok = match c {
            c if c.is_whitespace() => continue,
            '*' | '⊗' => Tok::Star,
            '|' | '⅋' => Tok::Bar,
            '^' | '⊥' => Tok::Hat,
            '(' => Tok::Open,
            ')' => Tok::Close,
            c if c.is_alphabetic() || c == '_' => {
                let mut name = String::from(c);
                while let Some(&(_, d)) = chars.peek() {
                    if d.is_alphanumeric() || d == '_' || d == '\'' {
                        name.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                Tok::Ident(name)
            }
            c => return Err(syntax(pos, format!("unexpected character `{c}`"))),
        };
        out.push((pos, tok));
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<(usize, &Tok)> {
        self.tokens.get(self.at).map(|(p, t)| (*p, t))
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek().map(|(_, t)| t) == Some(tok) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn par(&mut self) -> Result<Formula> {
        let mut f = self.tensor()?;
        while self.eat(&Tok::Bar) {
            f = Formula::par(f, self.tensor()?);
        }
        Ok(f)
    }

    fn tensor(&mut self) -> Result<Formula> {
        let mut f = self.postfix()?;
        while self.eat(&Tok::Star) {
            f = Formula::tensor(f, self.postfix()?);
        }
        Ok(f)
    }

    fn postfix(&mut self) -> Result<Formula> {
        let mut f = self.primary()?;
        while self.eat(&Tok::Hat) {
            f = f.dual();
        }
        Ok(f)
    }

    fn primary(&mut self) -> Result<Formula> {
        match self.peek() {
            None => Err(syntax(self.end, "unexpected end of input")),
            Some((_, Tok::Ident(name))) => {
                let f = Formula::atom(name);
                self.at += 1;
                Ok(f)
            }
            Some((open, Tok::Open)) => {
                self.at += 1;
                let f = self.par()?;
                if !self.eat(&Tok::Close) {
                    let pos = self.peek().map_or(self.end, |(p, _)| p);
                    return Err(syntax(pos, format!("missing `)` for `(` at offset {open}")));
                }
                Ok(f)
            }
            Some((pos, tok)) => Err(syntax(pos, format!("expected an atom or `(`, found {tok}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherence::chordless_coherence;
    use crate::graph::VertexId;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(p("A | A^"), Formula::par(Formula::atom("A"), Formula::neg_atom("A")));
        assert_eq!(
            p("(A|B)*(C|D)"),
            Formula::tensor(
                Formula::par(Formula::atom("A"), Formula::atom("B")),
                Formula::par(Formula::atom("C"), Formula::atom("D"))
            )
        );
        assert_eq!(p("(A*B)^"), Formula::par(Formula::neg_atom("A"), Formula::neg_atom("B")));
        assert_eq!(p("A ⊗ B ⅋ C"), p("(A*B)|C"));
        assert_eq!(p("A^^"), p("A"));
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(p("A * B | C * D"), p("(A*B)|(C*D)"));
        assert_eq!(p("A | B | C"), p("(A|B)|C"));
        assert_eq!(p("A * B * C"), p("(A*B)*C"));
    }

    #[test]
    fn syntax_errors() {
        for (text, pos) in [("A |", 3), ("(A", 2), ("A B", 2), ("A + B", 2), ("*A", 0), ("", 0)] {
            match parse_formula(text) {
                Err(Error::Syntax { pos: got, .. }) => assert_eq!(got, pos, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn display_round_trip() {
        for s in ["A", "A^", "(A|B)*(C|D)", "A*(B*C)", "(A|B)|C^", "A|(B|C)"] {
            let f = p(s);
            assert_eq!(p(&f.to_string()), f, "{s}");
        }
    }

    #[test]
    fn dual_examples() {
        assert_eq!(p("A").dual(), p("A^"));
        assert_eq!(p("A*B").dual(), p("A^|B^"));
        let f = p("(A|B^)*C");
        assert_eq!(f.dual().dual(), f);
    }

    #[test]
    fn leaves_in_order() {
        let leaves = p("(A|B^)*A^").leaves();
        let labels: Vec<_> = leaves.iter().map(|l| (l.index, &*l.name, l.positive)).collect();
        assert_eq!(labels, [(0, "A", true), (1, "B", false), (2, "A", false)]);
        assert!(leaves[0].is_dual_of(&leaves[2]));
    }

    #[test]
    fn cograph_examples() {
        let g = p("(A|B)*(C|D)").cograph();
        assert_eq!(g.vertices().len(), 4);
        assert_eq!(g.graph().edge_count(), 8);
        let low = [VertexId::from("0"), VertexId::from("1")];
        for (_, e) in g.graph().edges() {
            assert_ne!(low.contains(&e.src), low.contains(&e.tgt));
        }
        assert_eq!(g.coherence(), &chordless_coherence(g.graph()));

        let g = p("A|A^").cograph();
        assert_eq!(g.vertices().len(), 2);
        assert_eq!(g.graph().edge_count(), 0);
    }
}
