//! Minorant-minor posets of Boolean functions with few true points, their
//! ideal lattices, and the clonoids over near-unanimity clones built from them.

pub mod bf_core;
pub mod cli;
pub mod clonoid;
pub mod error;
pub mod lattice;
pub mod order;
pub mod poset;

pub use bf_core::{BoolFn, Closure, MinorMap, TuplePoint};
pub use error::{Error, Result};
