//! Matching search: exact branch-and-bound, greedy and local exchange moves,
//! and the structural checks built on top of them.

mod augment;
mod brute;
mod cover;
mod degree_bound;
mod exact;
mod greedy;
mod lp;

use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::hypergraph::KPartiteHypergraph;
use crate::matching::Matching;

pub use augment::{augment_local, augment_to_fixpoint, local_search};
pub use brute::{brute_force_threshold, ThresholdReport};
pub use cover::{balanced_cover_check, CoverOutcome, CoverWitness};
pub use degree_bound::{check_degree_bound_after_removal, check_degree_bound_for_set, DegreeBoundCheck, SetDegreeBoundCheck};
pub use exact::{has_perfect_matching, max_matching_exact};
pub use greedy::greedy_matching;
pub use lp::fractional_matching_number;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchMode {
    /// All bounds, including the fractional-matching LP.
    Exact,
    /// Cheap bounds only.
    BestEffort,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBudget {
    pub node_limit: u64,
    pub time_limit: Option<Duration>,
    pub mode: SearchMode,
    /// Split the root branches over the rayon pool.
    pub parallel: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            node_limit: 10_000_000,
            time_limit: None,
            mode: SearchMode::Exact,
            parallel: true,
        }
    }
}

impl SearchBudget {
    pub fn with_node_limit(node_limit: u64) -> Self {
        Self {
            node_limit,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone)]
pub struct MatchingResult {
    pub matching: Matching,
    /// Set only when the search space was exhausted.
    pub optimal: bool,
    pub nodes: u64,
}

#[derive(Debug, Clone)]
pub enum PerfectAnswer {
    Yes(Matching),
    No,
    Unknown,
}

impl PerfectAnswer {
    pub fn is_yes(&self) -> bool {
        matches!(self, PerfectAnswer::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, PerfectAnswer::No)
    }
}

/// Every pair of edges shares a vertex.
pub fn is_intersecting_family(h: &KPartiteHypergraph) -> bool {
    let edges = h.edges();
    edges.iter().enumerate().all(|(i, e)| {
        edges[i + 1..]
            .iter()
            .all(|f| e.iter().zip(f.iter()).any(|(a, b)| a == b))
    })
}
