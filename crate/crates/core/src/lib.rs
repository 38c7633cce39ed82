//! Combinatorial engine for finite order duality: posets and monotone maps,
//! upset lattices with Heyting operations, and the step-by-step Vietoris
//! complexes that freely add implications over a distributive-lattice dual.
//!
//! Everything here works on explicit finite data. Posets carry their full
//! reflexive-transitive order as bit rows, upsets are bit masks, and every
//! operation is a pure function of its inputs, so results are reproducible
//! bit for bit across runs.
//!
//! The crate is `no_std` (with `alloc`); IO, serialization and the command
//! line front end live in the companion `esakia-forge` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bits;
pub mod birkhoff;
pub mod caps;
pub mod error;
pub mod formula;
pub mod inquisitive;
pub mod poset;
pub mod universal;
pub mod varieties;
pub mod vietoris;

pub use caps::Caps;
pub use error::{Error, Result};
