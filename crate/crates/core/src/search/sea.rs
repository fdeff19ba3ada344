//! Depth-parametric extension search and the parallel work-queue driver.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use crate::group::{FiniteAbelianGroup, GroupElement};
use crate::seq::Sequence;

use super::frontier::SearchFrontier;
use super::{Budget, SearchError};

/// Whether a top-level candidate branch stops at its first completed
/// extension or enumerates every canonical tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeaMode {
    /// At most one extension per top-level candidate.
    FirstHit,
    /// Every extension tuple with non-increasing element indices.
    EnumerateAll,
}

/// One found extension: appending `elements` (non-increasing index order)
/// to the seed keeps it zero-sum free.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SeedExtension {
    pub seed_index: usize,
    pub elements: Vec<GroupElement>,
}

/// Statistics for one work item (one seed, one top-level candidate).
#[derive(Debug, Clone)]
pub struct WorkItemStat {
    pub seed_index: usize,
    pub top_candidate: GroupElement,
    pub extensions: usize,
    pub nodes: u64,
    /// Finished within the budget (and did not panic).
    pub completed: bool,
    /// The worker panicked on this item.
    pub failed: bool,
    pub elapsed: Duration,
}

/// Merged statistics of a search run. `completed` and `hits` count seeds,
/// mirroring the four columns of a run summary: test sequences, complete,
/// hits, extensions.
#[derive(Debug, Clone)]
pub struct SearchReport {
    pub seeds_processed: usize,
    pub completed: usize,
    pub hits: usize,
    pub extensions_found: usize,
    pub wall: Duration,
    pub items: Vec<WorkItemStat>,
}

impl SearchReport {
    /// The four statistics columns plus the wall time, as one JSON object.
    pub fn summary_json(&self) -> String {
        format!(
            "{{\"seeds\": {}, \"complete\": {}, \"hits\": {}, \"extensions\": {}, \"wall_seconds\": {:.6}}}",
            self.seeds_processed,
            self.completed,
            self.hits,
            self.extensions_found,
            self.wall.as_secs_f64()
        )
    }
}

/// Extensions plus the merged report.
#[derive(Debug, Clone)]
pub struct SeaOutcome {
    /// Sorted by seed index, then lexicographically by elements.
    pub extensions: Vec<SeedExtension>,
    pub report: SearchReport,
}

struct ItemOutput {
    extensions: Vec<Vec<GroupElement>>,
    nodes: u64,
    completed: bool,
}

/// Runs one top-level candidate branch. `depth` counts the candidate
/// itself; the final level only scans candidates, it never updates the
/// frontier.
fn run_item(
    group: &FiniteAbelianGroup,
    base: &SearchFrontier,
    top: GroupElement,
    depth: usize,
    mode: SeaMode,
    budget: &Budget,
    deadline: Option<Instant>,
) -> ItemOutput {
    let mut out = ItemOutput {
        extensions: Vec::new(),
        nodes: 0,
        completed: true,
    };
    if depth == 1 {
        out.extensions.push(vec![top]);
        return out;
    }
    let frontier = base.sca_unchecked(group, top);
    out.nodes = 1;
    let mut prefix = vec![top];
    descend(
        group,
        &frontier,
        top,
        2,
        depth,
        mode,
        budget,
        deadline,
        &mut prefix,
        &mut out,
    );
    out
}

/// Returns false when the branch should stop (first hit taken or budget
/// exhausted); `out.completed` distinguishes the two.
#[allow(clippy::too_many_arguments)]
fn descend(
    group: &FiniteAbelianGroup,
    frontier: &SearchFrontier,
    last: GroupElement,
    level: usize,
    depth: usize,
    mode: SeaMode,
    budget: &Budget,
    deadline: Option<Instant>,
    prefix: &mut Vec<GroupElement>,
    out: &mut ItemOutput,
) -> bool {
    if level == depth {
        for &h in frontier.allowed.iter().take_while(|&&h| h <= last) {
            let mut tuple = prefix.clone();
            tuple.push(h);
            out.extensions.push(tuple);
            if mode == SeaMode::FirstHit {
                return false;
            }
        }
        return true;
    }
    for &h in frontier.allowed.iter().take_while(|&&h| h <= last) {
        if let Some(cap) = budget.max_nodes {
            if out.nodes >= cap {
                out.completed = false;
                return false;
            }
        }
        if out.nodes & 0xff == 0 {
            if let Some(d) = deadline {
                if Instant::now() >= d {
                    out.completed = false;
                    return false;
                }
            }
        }
        let next = frontier.sca_unchecked(group, h);
        out.nodes += 1;
        prefix.push(h);
        let keep_going = descend(
            group, &next, h, level + 1, depth, mode, budget, deadline, prefix, out,
        );
        prefix.pop();
        if !keep_going {
            return false;
        }
    }
    true
}

fn check_inputs(seeds: &[Sequence], depth: usize) -> Result<(), SearchError> {
    if depth == 0 {
        return Err(SearchError::DepthZero);
    }
    if seeds.iter().any(|s| !s.is_zero_sum_free()) {
        return Err(SearchError::SeedNotZeroSumFree);
    }
    Ok(())
}

struct ItemRecord {
    seed_index: usize,
    top: GroupElement,
    output: ItemOutput,
    elapsed: Duration,
    failed: bool,
}

fn assemble(seed_count: usize, mut records: Vec<(usize, ItemRecord)>, wall: Duration) -> SeaOutcome {
    records.sort_by_key(|(order, _)| *order);

    let mut extensions = Vec::new();
    let mut items = Vec::with_capacity(records.len());
    let mut seed_complete = vec![true; seed_count];
    let mut seed_hits = vec![false; seed_count];

    for (_, record) in records {
        let ok = record.output.completed && !record.failed;
        seed_complete[record.seed_index] &= ok;
        if !record.output.extensions.is_empty() {
            seed_hits[record.seed_index] = true;
        }
        items.push(WorkItemStat {
            seed_index: record.seed_index,
            top_candidate: record.top,
            extensions: record.output.extensions.len(),
            nodes: record.output.nodes,
            completed: record.output.completed && !record.failed,
            failed: record.failed,
            elapsed: record.elapsed,
        });
        for elements in record.output.extensions {
            extensions.push(SeedExtension {
                seed_index: record.seed_index,
                elements,
            });
        }
    }
    extensions.sort();

    let report = SearchReport {
        seeds_processed: seed_count,
        completed: seed_complete.iter().filter(|&&c| c).count(),
        hits: seed_hits.iter().filter(|&&h| h).count(),
        extensions_found: extensions.len(),
        wall,
        items,
    };
    SeaOutcome { extensions, report }
}

/// Extension search from one seed: finds tuples `g_1 >= g_2 >= ... >= g_d`
/// (element-index order) whose addition keeps the seed zero-sum free. The
/// budget applies to each top-level branch separately; an exhausted branch
/// is flagged incomplete in the report rather than failing the run.
pub fn sea(
    seed: &Sequence,
    depth: usize,
    mode: SeaMode,
    budget: &Budget,
) -> Result<SeaOutcome, SearchError> {
    check_inputs(std::slice::from_ref(seed), depth)?;
    let start = Instant::now();
    let group = seed.group();
    let base = SearchFrontier::from_sequence(seed);

    let mut records = Vec::with_capacity(base.allowed.len());
    for (order, &top) in base.allowed.iter().enumerate() {
        let item_start = Instant::now();
        let output = run_item(group, &base, top, depth, mode, budget, budget.deadline());
        records.push((
            order,
            ItemRecord {
                seed_index: 0,
                top,
                output,
                elapsed: item_start.elapsed(),
                failed: false,
            },
        ));
    }
    Ok(assemble(1, records, start.elapsed()))
}

/// The work-queue driver: one work item per (seed, top-level candidate)
/// pair, dispatched dynamically to idle workers one item at a time. Results
/// are merged deterministically, so any worker count yields the sequential
/// result set. A panic inside a worker surfaces as a failed item.
pub fn parallel_sea(
    seeds: &[Sequence],
    depth: usize,
    mode: SeaMode,
    budget: &Budget,
    workers: usize,
) -> Result<SeaOutcome, SearchError> {
    check_inputs(seeds, depth)?;
    let workers = workers.max(1);
    let start = Instant::now();

    let frontiers: Vec<SearchFrontier> =
        seeds.iter().map(SearchFrontier::from_sequence).collect();
    let mut items = Vec::new();
    for (seed_index, frontier) in frontiers.iter().enumerate() {
        for &top in &frontier.allowed {
            items.push((seed_index, top));
        }
    }

    let next = AtomicUsize::new(0);
    let records: Mutex<Vec<(usize, ItemRecord)>> = Mutex::new(Vec::with_capacity(items.len()));

    std::thread::scope(|scope| {
        for _ in 0..workers {
            let next = &next;
            let items = &items;
            let frontiers = &frontiers;
            let records = &records;
            scope.spawn(move || loop {
                let index = next.fetch_add(1, Ordering::Relaxed);
                if index >= items.len() {
                    break;
                }
                let (seed_index, top) = items[index];
                let group = seeds[seed_index].group();
                let base = &frontiers[seed_index];
                let item_start = Instant::now();
                let result = catch_unwind(AssertUnwindSafe(|| {
                    run_item(group, base, top, depth, mode, budget, budget.deadline())
                }));
                let record = match result {
                    Ok(output) => ItemRecord {
                        seed_index,
                        top,
                        output,
                        elapsed: item_start.elapsed(),
                        failed: false,
                    },
                    Err(_) => ItemRecord {
                        seed_index,
                        top,
                        output: ItemOutput {
                            extensions: Vec::new(),
                            nodes: 0,
                            completed: false,
                        },
                        elapsed: item_start.elapsed(),
                        failed: true,
                    },
                };
                records.lock().unwrap().push((index, record));
            });
        }
    });

    let records = records.into_inner().unwrap();
    Ok(assemble(seeds.len(), records, start.elapsed()))
}

/// Collects up to `limit` canonical zero-sum free sequences of exactly
/// `target_len` elements, in the deterministic order of a largest-first
/// depth-first search. Useful as a reproducible seed battery; the sequences
/// are generated here, not taken from any published test set.
pub fn collect_zero_sum_free(
    group: &Arc<FiniteAbelianGroup>,
    target_len: usize,
    limit: usize,
    budget: &Budget,
) -> Vec<Sequence> {
    let mut out = Vec::new();
    if limit == 0 {
        return out;
    }
    if target_len == 0 {
        out.push(Sequence::empty(Arc::clone(group)));
        return out;
    }
    let empty = Sequence::empty(Arc::clone(group));
    let base = SearchFrontier::from_sequence(&empty);
    let deadline = budget.deadline();
    let mut nodes = 0u64;
    let mut prefix = Vec::with_capacity(target_len);

    fn walk(
        group: &Arc<FiniteAbelianGroup>,
        frontier: &SearchFrontier,
        last: GroupElement,
        target_len: usize,
        limit: usize,
        budget: &Budget,
        deadline: Option<Instant>,
        nodes: &mut u64,
        prefix: &mut Vec<GroupElement>,
        out: &mut Vec<Sequence>,
    ) -> bool {
        for &h in frontier
            .allowed
            .iter()
            .rev()
            .skip_while(|&&h| h > last)
        {
            if let Some(cap) = budget.max_nodes {
                if *nodes >= cap {
                    return false;
                }
            }
            if *nodes & 0xff == 0 {
                if let Some(d) = deadline {
                    if Instant::now() >= d {
                        return false;
                    }
                }
            }
            prefix.push(h);
            if prefix.len() == target_len {
                out.push(Sequence::from_slice(Arc::clone(group), prefix));
                prefix.pop();
                if out.len() >= limit {
                    return false;
                }
                continue;
            }
            let next = frontier.sca_unchecked(group, h);
            *nodes += 1;
            let keep_going = walk(
                group, &next, h, target_len, limit, budget, deadline, nodes, prefix, out,
            );
            prefix.pop();
            if !keep_going {
                return false;
            }
        }
        true
    }

    let top = GroupElement(group.size().saturating_sub(1));
    walk(
        group,
        &base,
        top,
        target_len,
        limit,
        budget,
        deadline,
        &mut nodes,
        &mut prefix,
        &mut out,
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{GroupSpec, TablePolicy};

    fn group(orders: &[u64]) -> Arc<FiniteAbelianGroup> {
        Arc::new(
            FiniteAbelianGroup::from_spec(&GroupSpec::new(orders.to_vec()), TablePolicy::Auto)
                .unwrap(),
        )
    }

    fn indices(extensions: &[SeedExtension]) -> Vec<Vec<usize>> {
        extensions
            .iter()
            .map(|e| e.elements.iter().map(|g| g.index()).collect())
            .collect()
    }

    #[test]
    fn depth_two_over_c3() {
        let g = group(&[3]);
        let seed = Sequence::empty(Arc::clone(&g));
        let outcome = sea(&seed, 2, SeaMode::EnumerateAll, &Budget::unlimited()).unwrap();
        assert_eq!(indices(&outcome.extensions), vec![vec![1, 1], vec![2, 2]]);
        assert_eq!(outcome.report.extensions_found, 2);
        assert_eq!(outcome.report.hits, 1);
        assert_eq!(outcome.report.seeds_processed, 1);
        assert_eq!(outcome.report.completed, 1);
    }

    #[test]
    fn seeded_search_over_c3_squared() {
        let g = group(&[3, 3]);
        let e1 = g.encode(&[1, 0]);
        let e2 = g.encode(&[0, 1]);
        let seed = Sequence::from_slice(Arc::clone(&g), &[e1, e2]);
        let outcome = sea(&seed, 2, SeaMode::EnumerateAll, &Budget::unlimited()).unwrap();
        // extending e1*e2 by e1 and e2 again stays zero-sum free
        assert!(outcome
            .extensions
            .iter()
            .any(|e| e.elements == vec![e1, e2]));
    }

    #[test]
    fn maximal_sequence_has_no_extension() {
        let g = group(&[3, 3]);
        let e1 = g.encode(&[1, 0]);
        let e2 = g.encode(&[0, 1]);
        let seed = Sequence::from_slice(Arc::clone(&g), &[e1, e1, e2, e2]);
        let outcome = sea(&seed, 1, SeaMode::EnumerateAll, &Budget::unlimited()).unwrap();
        assert!(outcome.extensions.is_empty());
        assert_eq!(outcome.report.hits, 0);
    }

    #[test]
    fn rejects_bad_inputs() {
        let g = group(&[4]);
        let not_free = Sequence::from_slice(Arc::clone(&g), &[GroupElement(2), GroupElement(2)]);
        assert_eq!(
            sea(&not_free, 2, SeaMode::EnumerateAll, &Budget::unlimited()).unwrap_err(),
            SearchError::SeedNotZeroSumFree
        );
        let seed = Sequence::empty(Arc::clone(&g));
        assert_eq!(
            sea(&seed, 0, SeaMode::EnumerateAll, &Budget::unlimited()).unwrap_err(),
            SearchError::DepthZero
        );
    }

    #[test]
    fn first_hit_limits_each_branch() {
        let g = group(&[7]);
        let seed = Sequence::empty(Arc::clone(&g));
        let all = sea(&seed, 3, SeaMode::EnumerateAll, &Budget::unlimited()).unwrap();
        let first = sea(&seed, 3, SeaMode::FirstHit, &Budget::unlimited()).unwrap();
        assert!(first.report.extensions_found <= all.report.extensions_found);
        for item in &first.report.items {
            assert!(item.extensions <= 1);
        }
        // every first-hit tuple is the smallest enumerate-all tuple of its branch
        for ext in &first.extensions {
            assert!(all.extensions.contains(ext));
        }
    }

    #[test]
    fn node_budget_marks_items_incomplete() {
        let g = group(&[5]);
        let seed = Sequence::empty(Arc::clone(&g));
        let outcome = sea(&seed, 4, SeaMode::EnumerateAll, &Budget::with_max_nodes(1)).unwrap();
        assert!(outcome.report.completed < 1 || outcome.report.items.iter().any(|i| !i.completed));
    }

    #[test]
    fn parallel_matches_sequential() {
        let g = group(&[3, 3, 3]);
        let seed = Sequence::empty(Arc::clone(&g));
        let sequential = sea(&seed, 3, SeaMode::EnumerateAll, &Budget::unlimited()).unwrap();
        for workers in [1, 2, 4] {
            let parallel = parallel_sea(
                std::slice::from_ref(&seed),
                3,
                SeaMode::EnumerateAll,
                &Budget::unlimited(),
                workers,
            )
            .unwrap();
            assert_eq!(parallel.extensions, sequential.extensions);
            assert_eq!(
                parallel.report.extensions_found,
                sequential.report.extensions_found
            );
            assert_eq!(parallel.report.hits, sequential.report.hits);
            assert_eq!(parallel.report.completed, sequential.report.completed);
        }
    }

    #[test]
    fn report_json_has_the_four_columns() {
        let g = group(&[3]);
        let seed = Sequence::empty(Arc::clone(&g));
        let outcome = sea(&seed, 1, SeaMode::EnumerateAll, &Budget::unlimited()).unwrap();
        let json = outcome.report.summary_json();
        for key in ["\"seeds\"", "\"complete\"", "\"hits\"", "\"extensions\"", "\"wall_seconds\""] {
            assert!(json.contains(key), "{json}");
        }
    }

    #[test]
    fn battery_is_deterministic() {
        let g = group(&[3, 3]);
        let a = collect_zero_sum_free(&g, 2, 5, &Budget::unlimited());
        let b = collect_zero_sum_free(&g, 2, 5, &Budget::unlimited());
        assert_eq!(a, b);
        assert_eq!(a.len(), 5);
        for seq in &a {
            assert_eq!(seq.len(), 2);
            assert!(seq.is_zero_sum_free());
        }
        assert_eq!(collect_zero_sum_free(&g, 0, 3, &Budget::unlimited()).len(), 1);
    }
}
