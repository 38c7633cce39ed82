//! IO companion to the duality engine: JSON schemas for posets, maps and
//! complexes, Hasse-diagram DOT emission, the command line dispatcher, and
//! the exhaustive check suites. All output is byte-deterministic for
//! identical inputs.

pub mod cli;
pub mod dot;
pub mod json;
pub mod suites;

pub const SCHEMA: &str = "esakia-forge/1";
