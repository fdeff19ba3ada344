//! Acceptance suite: one test per criterion, each printing a PASS line.
//! Run with `cargo test -p zerosum --test acceptance -- --nocapture`.

mod common;

use std::collections::HashSet;
use std::sync::Arc;

use common::*;
use zerosum::{
    build_corollary32, build_theorem31, collect_zero_sum_free, d_star, davenport_exact,
    davenport_exact_parallel, exists_split, girard_check, parallel_sea, savchev_chen_decompose,
    sea, Budget, GirardVerdict, GroupElement, Rational, SeaMode, Sequence, SubsumSet,
};

#[test]
fn criterion_1_long_minimal_zero_sum_family() {
    for n in [3u64, 5, 7, 9, 11, 13, 15] {
        let result = build_theorem31(n).unwrap();
        let expected_len = (8 * n - 1) as usize;
        assert_eq!(result.sequence.len(), expected_len, "n = {n}");
        assert_eq!(d_star(&result.group) + 2, expected_len, "n = {n}");
        for (claim, holds) in result.verify() {
            assert!(holds, "n = {n}: claim failed: {claim}");
        }
    }
    println!("ACCEPTANCE 1 (length-8n-1 minimal zero-sum family, n in 3..=15): PASS");
}

#[test]
fn criterion_2_cross_number_family() {
    for (n, r) in [(3u64, 5usize), (3, 6), (5, 5)] {
        let result = build_corollary32(n, r).unwrap();
        let d = d_star(&result.group);
        assert_eq!(
            result.sequence.len(),
            d - (n as usize - 2),
            "(n, r) = ({n}, {r})"
        );
        for (claim, holds) in result.verify() {
            assert!(holds, "(n, r) = ({n}, {r}): claim failed: {claim}");
        }
        let expected_cross = Rational::new((r as i64) * (2 * n as i64 - 1) + 1, 2 * n as i64);
        assert_eq!(result.sequence.cross_number().unwrap(), expected_cross);
    }
    // the named instance: |T| = d* - 1 and k(T) = 13/3
    let t = build_corollary32(3, 5).unwrap();
    assert_eq!(t.sequence.len(), 24);
    assert_eq!(t.sequence.cross_number().unwrap(), Rational::new(13, 3));
    println!("ACCEPTANCE 2 (high-cross-number zero-sum free family): PASS");
}

#[test]
fn criterion_3_split_nonexistence() {
    let t = build_corollary32(3, 5).unwrap();
    assert_eq!(t.group.size(), 7776);
    let witness = exists_split(&t.sequence).unwrap();
    assert_eq!(witness, None, "unexpected split witness: {witness:?}");
    println!("ACCEPTANCE 3 (no split of the (3,5) sequence over C6^5): PASS");
}

#[test]
fn criterion_4_exact_davenport_values() {
    let budget = Budget::unlimited();
    for n in 2..=20u64 {
        let g = group(&[n]);
        assert_eq!(
            davenport_exact(&g, &budget).unwrap(),
            (n - 1) as usize,
            "cyclic C{n}"
        );
    }
    for r in 1..=6usize {
        let g = group(&vec![2u64; r]);
        assert_eq!(davenport_exact(&g, &budget).unwrap(), r, "C2^{r}");
        assert_eq!(d_star(&g), r);
    }
    for (orders, expected) in [
        (vec![3u64, 3], 4usize),
        (vec![3, 3, 3], 6),
        (vec![2, 4], 4),
        (vec![4, 4], 6),
    ] {
        let g = group(&orders);
        assert_eq!(davenport_exact(&g, &budget).unwrap(), expected, "{orders:?}");
        assert_eq!(d_star(&g), expected, "{orders:?}");
    }
    // the rank-five phenomenon at desk scale: d exceeds d* on C2^4 + C6
    let g = group(&[2, 2, 2, 2, 6]);
    let workers = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(4)
        .min(8);
    let exact = davenport_exact_parallel(&g, &budget, workers).unwrap();
    assert_eq!(d_star(&g), 9);
    assert!(exact >= 10, "expected d >= 10, got {exact}");
    assert_eq!(exact, 10);
    println!("ACCEPTANCE 4 (exact Davenport values at desk scale): PASS");
}

#[test]
fn criterion_5_oracle_equivalence() {
    let budget = Budget::unlimited();
    for orders in all_groups_up_to(27) {
        let g = group(&orders);
        let size = g.size();
        let max_len = if size <= 9 { 4 } else { 3 };

        // exhaustive small-sequence space, zero element included
        let mut zsf_pool: Vec<Vec<GroupElement>> = Vec::new();
        for_each_canonical_multiset(&g, max_len, |_| true, &mut |elements| {
            let seq = Sequence::from_slice(Arc::clone(&g), elements);

            let fast: HashSet<usize> = seq.subsums().iter().map(|e| e.index()).collect();
            let brute = subsums_brute(&g, elements);
            assert_eq!(fast, brute, "subsums over {orders:?} on {elements:?}");

            let free = zsf_naive(&g, elements);
            assert_eq!(
                seq.is_zero_sum_free(),
                free,
                "zsf over {orders:?} on {elements:?}"
            );
            assert_eq!(free, !brute.contains(&0));

            assert_eq!(
                seq.is_minimal_zero_sum(),
                minimal_brute(&g, elements),
                "minimality over {orders:?} on {elements:?}"
            );

            let mut expected_forbidden = SubsumSet::empty(size);
            expected_forbidden.insert(g.zero());
            for &s in &brute {
                expected_forbidden.insert(g.neg(GroupElement(s)));
            }
            assert_eq!(
                seq.forbidden_set(),
                expected_forbidden,
                "forbidden set over {orders:?} on {elements:?}"
            );

            if free && !elements.is_empty() {
                zsf_pool.push(elements.to_vec());
            }
        });

        // extension search vs brute force over ordered tuples
        let mut seeds: Vec<Vec<GroupElement>> = vec![Vec::new()];
        seeds.extend(zsf_pool.iter().filter(|s| s.len() == 1).take(3).cloned());
        if let Some(pair) = zsf_pool.iter().find(|s| s.len() == 2) {
            seeds.push(pair.clone());
        }
        for seed_elements in seeds {
            let seed = Sequence::from_slice(Arc::clone(&g), &seed_elements);
            let outcome = sea(&seed, 2, SeaMode::EnumerateAll, &budget).unwrap();
            let found: Vec<Vec<usize>> = outcome
                .extensions
                .iter()
                .map(|e| e.elements.iter().map(|x| x.index()).collect())
                .collect();
            let expected = sea_brute(&g, &seed_elements, 2);
            assert_eq!(found, expected, "sea over {orders:?} seed {seed_elements:?}");
        }

        // split search vs materialize-everything brute force
        for elements in zsf_pool.iter().take(300) {
            let t = Sequence::from_slice(Arc::clone(&g), elements);
            let fast = exists_split(&t)
                .unwrap()
                .map(|w| (w.removed.index(), w.first.index(), w.second.index()));
            let brute = exists_split_brute(&g, &t);
            assert_eq!(fast, brute, "split over {orders:?} on {elements:?}");
        }
    }
    println!("ACCEPTANCE 5 (oracle equivalence on all groups up to order 27): PASS");
}

#[test]
fn criterion_6_cyclic_structure_of_long_sequences() {
    for n in 2..=12u64 {
        let g = group(&[n]);
        for elements in zsf_multisets_naive(&g, (n - 1) as usize) {
            // keep exactly the sequences with |S| > (n+1)/2
            if 2 * elements.len() <= (n + 1) as usize {
                continue;
            }
            let seq = Sequence::from_slice(Arc::clone(&g), &elements);
            let witness = savchev_chen_decompose(&seq)
                .unwrap()
                .unwrap_or_else(|| panic!("no witness over C{n} for {elements:?}"));

            assert_eq!(witness.multipliers.first(), Some(&1));
            let m: u64 = witness.multipliers.iter().sum();
            assert!(m < g.element_order(witness.generator));
            assert_eq!(witness.reconstruct(&g), seq);

            let mut expected = SubsumSet::empty(g.size());
            let mut walk = g.zero();
            for _ in 0..m {
                walk = g.add(walk, witness.generator);
                expected.insert(walk);
            }
            assert_eq!(seq.subsums(), expected, "interval subsums for {elements:?}");
        }
    }
    println!("ACCEPTANCE 6 (structure of long zero-sum free sequences over C_n, n <= 12): PASS");
}

#[test]
fn criterion_7_cross_number_bound_check() {
    let budget = Budget::unlimited();
    for n in 2..=12u64 {
        let g = group(&[n]);
        assert!(
            matches!(
                girard_check(&g, &budget),
                GirardVerdict::AllWithinBound { .. }
            ),
            "C{n}"
        );
    }
    for orders in [vec![2u64, 4], vec![3, 3], vec![2, 2, 2]] {
        let g = group(&orders);
        assert!(
            matches!(
                girard_check(&g, &budget),
                GirardVerdict::AllWithinBound { .. }
            ),
            "{orders:?}"
        );
    }
    println!("ACCEPTANCE 7 (cross-number bound holds on the checked groups): PASS");
}

#[test]
fn criterion_8_parallel_determinism() {
    let budget = Budget::unlimited();
    for orders in [vec![3u64, 3, 3], vec![2, 6]] {
        let g = group(&orders);
        let mut seeds = collect_zero_sum_free(&g, 2, 6, &budget);
        seeds.extend(collect_zero_sum_free(&g, 3, 6, &budget));
        assert!(!seeds.is_empty());

        let baseline = parallel_sea(&seeds, 3, SeaMode::EnumerateAll, &budget, 1).unwrap();
        // workers = 1 equals the sequential path seed by seed
        let mut sequential = Vec::new();
        for (index, seed) in seeds.iter().enumerate() {
            let outcome = sea(seed, 3, SeaMode::EnumerateAll, &budget).unwrap();
            for mut ext in outcome.extensions {
                ext.seed_index = index;
                sequential.push(ext);
            }
        }
        sequential.sort();
        assert_eq!(baseline.extensions, sequential, "{orders:?}");

        for workers in [2usize, 4, 8] {
            let outcome =
                parallel_sea(&seeds, 3, SeaMode::EnumerateAll, &budget, workers).unwrap();
            assert_eq!(outcome.extensions, baseline.extensions, "{orders:?}");
            assert_eq!(outcome.report.hits, baseline.report.hits);
            assert_eq!(
                outcome.report.extensions_found,
                baseline.report.extensions_found
            );
            assert_eq!(outcome.report.completed, baseline.report.completed);
            assert_eq!(
                outcome.report.seeds_processed,
                baseline.report.seeds_processed
            );
        }
    }
    println!("ACCEPTANCE 8 (identical results for 1, 2, 4, 8 workers): PASS");
}

#[test]
fn criterion_9_report_schema() {
    // Cluster-scale run statistics (hundreds of seeds over C2+C10^4 and a
    // six-figure CPU-hour budget) are intentionally not reproduced here:
    // the seed sets are not public and the compute is out of reach. The
    // mechanism is covered by criteria 3, 5, and 8; this test pins the
    // report schema to the same four statistics columns.
    let g = group(&[3, 3]);
    let seed = Sequence::empty(Arc::clone(&g));
    let outcome = sea(&seed, 2, SeaMode::EnumerateAll, &Budget::unlimited()).unwrap();
    let report = &outcome.report;

    let _test_sequences: usize = report.seeds_processed;
    let _complete: usize = report.completed;
    let _hits: usize = report.hits;
    let _extensions: usize = report.extensions_found;

    let json = report.summary_json();
    for key in [
        "\"seeds\"",
        "\"complete\"",
        "\"hits\"",
        "\"extensions\"",
        "\"wall_seconds\"",
    ] {
        assert!(json.contains(key), "missing {key} in {json}");
    }
    for item in &report.items {
        let _ = (item.seed_index, item.top_candidate, item.elapsed);
    }
    println!(
        "ACCEPTANCE 9 (schema carries seeds/complete/hits/extensions; cluster-scale counts \
         explicitly out of scope): PASS"
    );
}
