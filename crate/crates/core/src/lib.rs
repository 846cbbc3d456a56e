//! Perfect matchings in k-partite k-uniform hypergraphs: extremal
//! constructions, minimum-degree thresholds, exact and heuristic matching
//! search, absorbing families and an end-to-end solver.

pub mod absorption;
pub mod constructions;
pub mod engine;
pub mod error;
pub mod format;
pub mod hypergraph;
pub mod link;
pub mod matching;
pub mod solver;
pub mod structure;
pub mod thresholds;

pub use error::{Error, Result};
pub use hypergraph::{BalancedSet, Edge, KPartiteHypergraph, LegalSet, VertexRef};
pub use matching::Matching;
