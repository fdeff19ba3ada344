//! Exact Davenport-type computations by exhaustive canonical search.
//!
//! The search walks every zero-sum free multiset exactly once by choosing
//! elements in non-increasing index order. Its node state is the exact
//! global forbidden set plus the candidates `<= last` that are still
//! allowed. Two sound bounds prune hopeless branches:
//!
//! - every accepted element enlarges the forbidden set (the negated new
//!   total sum was not forbidden before), so an extension adds at most
//!   `|G| - |forbidden|` elements;
//! - an element `h` can repeat at most `ord(h) - 1` times in any zero-sum
//!   free multiset, so an extension adds at most `Σ (ord(h) - 1)` over the
//!   remaining candidates.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::Instant;

use crate::group::{FiniteAbelianGroup, GroupElement};
use crate::rational::Rational;
use crate::subsum::SubsumSet;

use super::frontier::SearchFrontier;
use super::{Budget, SearchError};

fn empty_frontier(group: &FiniteAbelianGroup) -> SearchFrontier {
    let mut forbidden = SubsumSet::empty(group.size());
    forbidden.insert(group.zero());
    let allowed = forbidden.complement_elements();
    SearchFrontier { allowed, forbidden }
}

/// Node state of the exact search; `allowed` holds only candidates
/// `<= last`, while `forbidden` is the exact global set `−Σ(S) ∪ {0}`.
struct ExactNode {
    allowed: Vec<GroupElement>,
    forbidden: SubsumSet,
    /// `Σ (ord(h) - 1)` over `allowed`.
    capacity: u64,
}

impl ExactNode {
    fn root(group: &FiniteAbelianGroup, order_headroom: &[u64]) -> ExactNode {
        let base = empty_frontier(group);
        let capacity = base.allowed.iter().map(|h| order_headroom[h.0]).sum();
        ExactNode {
            allowed: base.allowed,
            forbidden: base.forbidden,
            capacity,
        }
    }

    /// Extends the underlying sequence by `allowed[choice]` and keeps the
    /// candidate prefix at or below it.
    fn child(
        &self,
        group: &FiniteAbelianGroup,
        choice: usize,
        order_headroom: &[u64],
    ) -> ExactNode {
        let h = self.allowed[choice];
        let mut forbidden = self.forbidden.clone();
        for x in self.forbidden.iter() {
            forbidden.insert(group.sub(x, h));
        }
        let mut allowed = Vec::with_capacity(choice + 1);
        let mut capacity = 0u64;
        for &x in &self.allowed[..=choice] {
            if !forbidden.contains(x) {
                allowed.push(x);
                capacity += order_headroom[x.0];
            }
        }
        ExactNode {
            allowed,
            forbidden,
            capacity,
        }
    }

    fn headroom(&self, group_size: usize) -> u64 {
        self.capacity
            .min((group_size - self.forbidden.count()) as u64)
    }
}

fn order_headroom_table(group: &FiniteAbelianGroup) -> Vec<u64> {
    group
        .elements()
        .map(|h| group.element_order(h).saturating_sub(1))
        .collect()
}

struct ExactContext<'a> {
    group: &'a FiniteAbelianGroup,
    order_headroom: Vec<u64>,
    budget: &'a Budget,
    deadline: Option<Instant>,
    nodes: u64,
    best: usize,
}

impl ExactContext<'_> {
    fn charge_node(&mut self) -> Result<(), SearchError> {
        self.nodes += 1;
        if let Some(cap) = self.budget.max_nodes {
            if self.nodes > cap {
                return Err(SearchError::BudgetExhausted);
            }
        }
        if self.nodes & 0x3ff == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    return Err(SearchError::BudgetExhausted);
                }
            }
        }
        Ok(())
    }

    fn explore(&mut self, node: &ExactNode, len: usize) -> Result<(), SearchError> {
        if len > self.best {
            self.best = len;
        }
        if len as u64 + node.headroom(self.group.size()) <= self.best as u64 {
            return Ok(());
        }
        for choice in 0..node.allowed.len() {
            self.charge_node()?;
            let child = node.child(self.group, choice, &self.order_headroom);
            self.explore(&child, len + 1)?;
        }
        Ok(())
    }
}

/// The exact maximal length of a zero-sum free sequence over the group,
/// by exhaustive canonical search. The budget guards runaway cases; when it
/// is exceeded no value is returned, because a partial search cannot prove
/// the maximum.
pub fn davenport_exact(
    group: &FiniteAbelianGroup,
    budget: &Budget,
) -> Result<usize, SearchError> {
    let mut ctx = ExactContext {
        group,
        order_headroom: order_headroom_table(group),
        budget,
        deadline: budget.deadline(),
        nodes: 0,
        best: 0,
    };
    let root = ExactNode::root(group, &ctx.order_headroom);
    ctx.explore(&root, 0)?;
    Ok(ctx.best)
}

/// Parallel variant: top-level candidates are distributed over a work
/// queue one at a time; the best length found so far is shared, which only
/// strengthens the pruning, so the result equals the sequential one.
pub fn davenport_exact_parallel(
    group: &FiniteAbelianGroup,
    budget: &Budget,
    workers: usize,
) -> Result<usize, SearchError> {
    let workers = workers.max(1);
    if workers == 1 {
        return davenport_exact(group, budget);
    }
    let order_headroom = order_headroom_table(group);
    let root = ExactNode::root(group, &order_headroom);
    let deadline = budget.deadline();

    let best = AtomicUsize::new(0);
    let nodes = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    let next = AtomicUsize::new(0);

    struct SharedContext<'a> {
        group: &'a FiniteAbelianGroup,
        order_headroom: &'a [u64],
        budget: &'a Budget,
        deadline: Option<Instant>,
        best: &'a AtomicUsize,
        nodes: &'a AtomicU64,
        stop: &'a AtomicBool,
        local_nodes: u64,
    }

    impl SharedContext<'_> {
        fn charge_node(&mut self) -> Result<(), SearchError> {
            self.local_nodes += 1;
            if self.local_nodes & 0x3ff == 0 {
                let total = self.nodes.fetch_add(0x400, Ordering::Relaxed) + 0x400;
                if self.stop.load(Ordering::Relaxed) {
                    return Err(SearchError::BudgetExhausted);
                }
                if let Some(cap) = self.budget.max_nodes {
                    if total > cap {
                        return Err(SearchError::BudgetExhausted);
                    }
                }
                if let Some(d) = self.deadline {
                    if Instant::now() >= d {
                        return Err(SearchError::BudgetExhausted);
                    }
                }
            }
            Ok(())
        }

        fn explore(&mut self, node: &ExactNode, len: usize) -> Result<(), SearchError> {
            self.best.fetch_max(len, Ordering::Relaxed);
            let best = self.best.load(Ordering::Relaxed);
            if len as u64 + node.headroom(self.group.size()) <= best as u64 {
                return Ok(());
            }
            for choice in 0..node.allowed.len() {
                self.charge_node()?;
                let child = node.child(self.group, choice, self.order_headroom);
                self.explore(&child, len + 1)?;
            }
            Ok(())
        }
    }

    let failed = AtomicBool::new(false);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            let root = &root;
            let next = &next;
            let best = &best;
            let nodes = &nodes;
            let stop = &stop;
            let failed = &failed;
            let order_headroom = &order_headroom;
            scope.spawn(move || {
                let mut ctx = SharedContext {
                    group,
                    order_headroom,
                    budget,
                    deadline,
                    best,
                    nodes,
                    stop,
                    local_nodes: 0,
                };
                loop {
                    let index = next.fetch_add(1, Ordering::Relaxed);
                    if index >= root.allowed.len() || stop.load(Ordering::Relaxed) {
                        break;
                    }
                    let child = root.child(group, index, order_headroom);
                    if ctx.charge_node().is_err() || ctx.explore(&child, 1).is_err() {
                        failed.store(true, Ordering::Relaxed);
                        stop.store(true, Ordering::Relaxed);
                        break;
                    }
                }
            });
        }
    });

    if failed.load(Ordering::Relaxed) {
        return Err(SearchError::BudgetExhausted);
    }
    Ok(best.load(Ordering::Relaxed))
}

/// The exact little cross number: the maximum cross number over all
/// zero-sum free sequences, by the same exhaustive canonical search. Only
/// sensible on tiny groups.
pub fn little_cross_number_exact(
    group: &FiniteAbelianGroup,
    budget: &Budget,
) -> Result<Rational, SearchError> {
    struct CrossContext<'a> {
        group: &'a FiniteAbelianGroup,
        budget: &'a Budget,
        deadline: Option<Instant>,
        nodes: u64,
        best: Rational,
    }

    impl CrossContext<'_> {
        fn explore(
            &mut self,
            frontier: &SearchFrontier,
            last: GroupElement,
            cross: Rational,
        ) -> Result<(), SearchError> {
            if cross > self.best {
                self.best = cross;
            }
            // each further element contributes at most 1/2
            let headroom = Rational::new(frontier.allowed.len() as i64, 2);
            if cross + headroom <= self.best {
                return Ok(());
            }
            for &h in frontier.allowed.iter().take_while(|&&h| h <= last) {
                self.nodes += 1;
                if let Some(cap) = self.budget.max_nodes {
                    if self.nodes > cap {
                        return Err(SearchError::BudgetExhausted);
                    }
                }
                if self.nodes & 0x3ff == 0 {
                    if let Some(d) = self.deadline {
                        if Instant::now() >= d {
                            return Err(SearchError::BudgetExhausted);
                        }
                    }
                }
                let next = frontier.sca_unchecked(self.group, h);
                let contribution = Rational::unit_fraction(self.group.element_order(h));
                self.explore(&next, h, cross + contribution)?;
            }
            Ok(())
        }
    }

    let frontier = empty_frontier(group);
    let top = GroupElement(group.size().saturating_sub(1));
    let mut ctx = CrossContext {
        group,
        budget,
        deadline: budget.deadline(),
        nodes: 0,
        best: Rational::ZERO,
    };
    ctx.explore(&frontier, top, Rational::ZERO)?;
    Ok(ctx.best)
}
