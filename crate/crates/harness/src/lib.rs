//! Random generation and executable metatheory for PHOML: typed and untyped
//! generators, property suites, a shrinker and a bounded search for closed
//! proofs of `bot`.

pub mod consistency;
pub mod gen;
pub mod props;
pub mod shrink;
