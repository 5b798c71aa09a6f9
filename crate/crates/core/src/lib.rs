//! Critical independent sets, `ker`, `core` and `diadem` of finite simple
//! graphs, with exhaustive oracles for small orders.
//!
//! Vertices are `0..n`. Polynomial routines work at any size; everything that
//! enumerates subsets refuses graphs above a documented limit and says so
//! through [`Error::LimitExceeded`].

#![no_std]

extern crate alloc;

pub mod critical;
mod error;
pub mod gallai_edmonds;
mod graph;
pub mod independence;
pub mod matching;
pub mod oracle;
mod outcome;
mod set;
mod subsets;
pub mod unicyclic;

pub use error::{Error, Result, ScriptFault};
pub use graph::{difference, neighborhood, Graph, Subgraph};
pub use outcome::Outcome;
pub use set::{Iter, VertexSet};
pub use subsets::{ENUMERATION_LIMIT, SUBSET_LIMIT};
