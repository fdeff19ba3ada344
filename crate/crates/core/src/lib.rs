//! Computations with zero-sum sequences over finite abelian groups.
//!
//! A sequence over a group `G` is a finite multiset of group elements. This
//! crate provides:
//!
//! - explicit finite abelian groups with fast mixed-radix element arithmetic
//!   and optional operation tables ([`group`]),
//! - sequences, subsum sets, zero-sum predicates, cross numbers, and the
//!   structure test for long zero-sum free sequences over cyclic groups
//!   ([`seq`]),
//! - closed-form invariants (`d*`, `k*`, bounds) and builders for two
//!   families of extremal sequences ([`invariants`]),
//! - a pruned backtracking search for extending zero-sum free sequences,
//!   exact Davenport constants on small groups, and a work-queue parallel
//!   driver ([`search`]).
//!
//! Element indices are mixed-radix encodings of coordinate vectors, so the
//! order on indices is the lexicographic order on coordinates; the search
//! code relies on that order to enumerate each multiset exactly once.

pub mod group;
pub mod invariants;
pub mod rational;
pub mod search;
pub mod seq;
pub mod subsum;

pub use group::{FiniteAbelianGroup, GroupElement, GroupError, GroupSpec, TablePolicy};
pub use invariants::{
    build_corollary32, build_theorem31, d_star, davenport_upper_bound, girard_bound, k_star,
    Claim, ConstructionError, ConstructionResult,
};
pub use rational::Rational;
pub use search::{
    collect_zero_sum_free, davenport_exact, davenport_exact_parallel, exists_split, girard_check,
    little_cross_number_exact, parallel_sea, sea, Budget, GirardVerdict, SeaMode, SeaOutcome,
    SearchError, SearchFrontier, SearchReport, SeedExtension, SplitWitness, WorkItemStat,
};
pub use seq::{savchev_chen_decompose, SavchevChenWitness, SeqError, Sequence};
pub use subsum::SubsumSet;
