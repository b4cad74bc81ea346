//! Exact tools for balanced separators, treewidth and centred
//! tree-decompositions of small graphs.
//!
//! Everything here is exact and exponential in the worst case. Each
//! exponential routine refuses inputs above a [`Limits`] ceiling instead of
//! running unboundedly.

pub mod centred;
pub mod coarse;
pub mod document;
pub mod error;
pub mod graph;
pub mod independence;
pub mod laws;
pub mod limits;
pub mod par;
pub mod separators;
pub mod treedecomp;
pub mod vset;

pub use error::{CoarseError, Result};
pub use graph::{Distance, Graph};
pub use limits::Limits;
pub use par::Execution;
pub use vset::VertexSet;
