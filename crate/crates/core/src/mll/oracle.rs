//! Proof search in the one-sided sequent calculus with the axiom links fixed
//! in advance. Independent of the graph machinery: it only looks at the
//! formula tree and the pairing of leaves.

use std::collections::HashMap;

use crate::error::Result;
use crate::mll::formula::Formula;
use crate::mll::proof::validate_links;

#[derive(Clone, Copy)]
enum Node {
    Leaf(usize),
    Tensor(usize, usize),
    Par(usize, usize),
}

struct Search {
    nodes: Vec<Node>,
    /// Leaves below each node, as a bit mask.
    below: Vec<u64>,
    partner: Vec<usize>,
    mix: bool,
    memo: HashMap<u64, bool>,
}

/// Is there a derivation of `⊢ f` whose axioms are exactly the given links?
///
/// Rules: axiom on a linked pair, ⅋, ⊗ with every split of the context, and
/// binary Mix when `mix` holds.
pub fn sequent_oracle(f: &Formula, pairs: &[(usize, usize)], mix: bool) -> Result<bool> {
    validate_links(f, pairs)?;
    let n = f.leaf_count();
    assert!(2 * n - 1 <= 64, "formula too large for the oracle");
    let mut partner = vec![0; n];
    for &(i, j) in pairs {
        partner[i] = j;
        partner[j] = i;
    }
    let mut s = Search {
        nodes: Vec::new(),
        below: Vec::new(),
        partner,
        mix,
        memo: HashMap::new(),
    };
    let root = s.add(f, &mut 0);
    Ok(s.provable(1 << root))
}

impl Search {
    fn add(&mut self, f: &Formula, leaf: &mut usize) -> usize {
        let (node, below) = match f {
            Formula::Atom { .. } => {
                *leaf += 1;
                (Node::Leaf(*leaf - 1), 1 << (*leaf - 1))
            }
            Formula::Tensor(a, b) | Formula::Par(a, b) => {
                let (a, b) = (self.add(a, leaf), self.add(b, leaf));
                let below = self.below[a] | self.below[b];
                if matches!(f, Formula::Tensor(..)) {
                    (Node::Tensor(a, b), below)
                } else {
                    (Node::Par(a, b), below)
                }
            }
        };
        self.nodes.push(node);
        self.below.push(below);
        self.nodes.len() - 1
    }

    fn leaves(&self, seq: u64) -> u64 {
        ones(seq).fold(0, |acc, k| acc | self.below[k])
    }

    /// Every leaf under `seq` has its partner under `seq` too.
    fn closed(&self, seq: u64) -> bool {
        let leaves = self.leaves(seq);
        ones(leaves).all(|l| leaves & (1 << self.partner[l]) != 0)
    }

    /// Groups of formulas in `seq` tied together by links; a context split
    /// can only send whole groups to one side.
    fn groups(&self, seq: u64) -> Vec<u64> {
        // (formulas, leaves)
        let mut groups: Vec<(u64, u64)> = Vec::new();
        for k in ones(seq) {
            let reach = ones(self.below[k]).fold(0u64, |acc, l| acc | 1 << self.partner[l]);
            let mut merged = (1u64 << k, self.below[k]);
            groups.retain(|&(fs, ls)| {
                let linked = ls & reach != 0;
                if linked {
                    merged = (merged.0 | fs, merged.1 | ls);
                }
                !linked
            });
            groups.push(merged);
        }
        groups.into_iter().map(|(fs, _)| fs).collect()
    }

    fn provable(&mut self, seq: u64) -> bool {
        if let Some(&r) = self.memo.get(&seq) {
            return r;
        }
        let r = self.search(seq);
        self.memo.insert(seq, r);
        r
    }

    fn search(&mut self, seq: u64) -> bool {
        if !self.closed(seq) {
            return false;
        }
        // ⅋ is invertible: decomposing it first loses no derivation.
        if let Some((k, a, b)) = ones(seq).find_map(|k| match self.nodes[k] {
            Node::Par(a, b) => Some((k, a, b)),
            _ => None,
        }) {
            return self.provable(seq & !(1 << k) | 1 << a | 1 << b);
        }
        if seq.count_ones() == 2 {
            let mut it = ones(seq);
            let (x, y) = (it.next().unwrap(), it.next().unwrap());
            if let (Node::Leaf(i), Node::Leaf(j)) = (self.nodes[x], self.nodes[y]) {
                if self.partner[i] == j {
                    return true;
                }
            }
        }
        let groups = self.groups(seq);
        if self.mix && groups.len() > 1 {
            // the group holding the lowest formula stays on the left, so each
            // unordered split is tried once
            let rest = groups.len() - 1;
            for mask in 0..(1u64 << rest) - 1 {
                let left = groups[0] | pick(&groups[1..], mask);
                if self.provable(left) && self.provable(seq & !left) {
                    return true;
                }
            }
        }
        for k in ones(seq) {
            let Node::Tensor(a, b) = self.nodes[k] else {
                continue;
            };
            let ctx = seq & !(1 << k);
            let groups = self.groups(ctx);
            for mask in 0..1u64 << groups.len() {
                let left = pick(&groups, mask);
                let (l, r) = (left | 1 << a, (ctx & !left) | 1 << b);
                if self.closed(l) && self.closed(r) && self.provable(l) && self.provable(r) {
                    return true;
                }
            }
        }
        false
    }
}

fn pick(groups: &[u64], mask: u64) -> u64 {
    groups
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .fold(0, |acc, (_, g)| acc | g)
}

fn ones(mut x: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if x == 0 {
            None
        } else {
            let k = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(k)
        }
    })
}
