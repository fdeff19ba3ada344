//! Pruned backtracking machinery for extending zero-sum free sequences.
//!
//! The central object is a [`SearchFrontier`]: the current forbidden set
//! `−Σ(S) ∪ {0}` paired with the list of still-allowed candidates. One
//! frontier update ([`SearchFrontier::sca`]) extends the underlying sequence
//! by a candidate and reclassifies only the allowed elements, never the full
//! group. The extension search ([`sea`]) walks candidates in non-increasing
//! index order so each extension multiset is enumerated exactly once, and
//! [`parallel_sea`] distributes the outermost candidate loop over a work
//! queue with single-item dispatch.

mod davenport;
mod frontier;
mod girard;
mod sea;
mod split;

use std::time::{Duration, Instant};

use thiserror::Error;

pub use davenport::{davenport_exact, davenport_exact_parallel, little_cross_number_exact};
pub use frontier::SearchFrontier;
pub use girard::{girard_check, GirardVerdict};
pub use sea::{
    collect_zero_sum_free, parallel_sea, sea, SeaMode, SeaOutcome, SearchReport, SeedExtension,
    WorkItemStat,
};
pub use split::{exists_split, SplitWitness};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("candidate is not in the allowed list")]
    CandidateNotAllowed,
    #[error("the seed sequence is not zero-sum free")]
    SeedNotZeroSumFree,
    #[error("the sequence is not zero-sum free")]
    NotZeroSumFree,
    #[error("search depth must be at least 1")]
    DepthZero,
    #[error("budget exhausted before the search completed")]
    BudgetExhausted,
}

/// Wall-clock and node-count limits. A node is one frontier update.
#[derive(Debug, Clone, Default)]
pub struct Budget {
    pub wall: Option<Duration>,
    pub max_nodes: Option<u64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn with_wall_seconds(seconds: f64) -> Self {
        Budget {
            wall: Some(Duration::from_secs_f64(seconds)),
            max_nodes: None,
        }
    }

    pub fn with_max_nodes(nodes: u64) -> Self {
        Budget {
            wall: None,
            max_nodes: Some(nodes),
        }
    }

    pub(crate) fn deadline(&self) -> Option<Instant> {
        self.wall.map(|w| Instant::now() + w)
    }
}
