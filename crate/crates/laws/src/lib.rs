//! Generators, reference oracles and law suites for `cig-core`.

pub mod enumerate;
pub mod gen;
pub mod oracle;
pub mod suites;
