//! Wu invariants of generic plane immersions of graphs.
//!
//! A drawing of a graph is reduced to an integer vector indexed by the
//! non-tree edges of the symmetric tube; two drawings are regularly homotopic
//! exactly when the vectors agree.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod export;
pub mod generators;
pub mod geometry;
pub mod graph;
pub mod immersion;
pub mod moves;
pub mod oracle;
pub mod par;
pub mod tube;
pub mod wu;

pub use error::{Error, Result};
pub use graph::{EdgeCycle, Graph, GraphData, Subgraph};
pub use immersion::{validate_generic, ImmersionData, PlaneImmersion};
pub use tube::SymmetricTube;
pub use wu::{equivalent, evaluate_on_tube_cycle, star_wu, wu, WuOptions, WuVector};
