//! Exhaustive enumerations of formula shapes and matchings.

use std::sync::Arc;

use cig_core::mll::Formula;

/// Every formula tree with `n` leaves and every choice of connectives. All
/// leaves are the positive atom `X`; use [`label_for`] to make a matching
/// admissible.
pub fn shapes(n: usize) -> Vec<Formula> {
    let mut table: Vec<Vec<Formula>> = vec![Vec::new(), vec![Formula::atom("X")]];
    for k in 2..=n {
        let mut out = Vec::new();
        for left in 1..k {
            for a in &table[left] {
                for b in &table[k - left] {
                    out.push(Formula::tensor(a.clone(), b.clone()));
                    out.push(Formula::par(a.clone(), b.clone()));
                }
            }
        }
        table.push(out);
    }
    table.swap_remove(n)
}

/// Calls `visit` on every formula [`shapes`] would return, in the same
/// order, without holding them all in memory.
pub fn for_each_shape(n: usize, visit: &mut dyn FnMut(Formula)) {
    if n == 1 {
        return visit(Formula::atom("X"));
    }
    for left in 1..n {
        for_each_shape(left, &mut |a| {
            for_each_shape(n - left, &mut |b| {
                visit(Formula::tensor(a.clone(), b.clone()));
                visit(Formula::par(a.clone(), b));
            })
        });
    }
}

/// Number of formulas [`shapes`] yields, without building them.
pub fn shape_count(n: usize) -> u64 {
    let mut count = vec![0u64, 1];
    for k in 2..=n {
        count.push((1..k).map(|l| 2 * count[l] * count[k - l]).sum());
    }
    count[n]
}

/// All perfect matchings of `0..n`, each as pairs `(i, j)` with `i < j`
/// sorted by `i`.
pub fn perfect_matchings(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(free: &mut Vec<usize>, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if free.is_empty() {
            out.push(cur.clone());
            return;
        }
        let first = free.remove(0);
        for k in 0..free.len() {
            let other = free.remove(k);
            cur.push((first, other));
            go(free, cur, out);
            cur.pop();
            free.insert(k, other);
        }
        free.insert(0, first);
    }
    let mut out = Vec::new();
    if n.is_multiple_of(2) {
        go(&mut (0..n).collect(), &mut Vec::new(), &mut out);
    }
    out
}

/// Atom name for link `k`: `A`, `B`, …, `Z`, `A1`, ….
pub fn atom_name(k: usize) -> String {
    let letter = (b'A' + (k % 26) as u8) as char;
    match k / 26 {
        0 => letter.to_string(),
        r => format!("{letter}{r}"),
    }
}

/// Relabels the leaves of `f` so that every pair of `pairs` links dual
/// atoms: pair `k` gets atom `k`, positive on its smaller leaf.
///
/// Correctness and sequentializability do not look at atom names beyond
/// duality of linked leaves, so this one labelling stands for every
/// admissible labelling of the same links.
pub fn label_for(f: &Formula, pairs: &[(usize, usize)]) -> Formula {
    let mut labels: Vec<(Arc<str>, bool)> = vec![(Arc::from(""), true); f.leaf_count()];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        let name: Arc<str> = Arc::from(atom_name(k));
        let (lo, hi) = (i.min(j), i.max(j));
        labels[lo] = (name.clone(), true);
        labels[hi] = (name, false);
    }
    f.relabel(&labels)
}
