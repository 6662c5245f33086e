//! Splittings of right-angled Artin groups over the trivial group and over
//! ℤ, and their cyclic JSJ decompositions, computed from the defining graph.
//!
//! ```
//! use raag_core::{parse_graph, splitting::{splits_over_z, ZSplit}, jsj::jsj};
//!
//! let star = parse_graph("c l1\nc l2\nc l3").unwrap();
//! assert_eq!(splits_over_z(&star).unwrap().z_split, ZSplit::Yes);
//! assert_eq!(jsj(&star).unwrap().edges.len(), 6);
//! ```

pub mod blocks;
pub mod census;
pub mod error;
pub mod graph;
pub mod jsj;
pub mod par;
pub mod splitting;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{parse_graph, CycleWitness, SimplicialGraph, VertexId, VertexSubset};
pub use par::Execution;
