//! Unit-free multiplicative linear logic on top of coherent graphs.

mod cut;
mod formula;
mod oracle;
mod proof;

pub use cut::cut_eliminate;
pub use formula::{parse_formula, AtomOccurrence, Formula};
pub use oracle::sequent_oracle;
pub use proof::{
    build_proof, check_correctness, nondet_proof, parse_links, validate_links, CographicProof, CorrectnessChecker, Matching,
    Verdict,
};
