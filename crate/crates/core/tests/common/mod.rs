//! Brute-force oracles, independent of the library's subsum-set and
//! frontier machinery: plain `HashSet` sum tracking, explicit subset
//! enumeration, and naive multiset recursion. The test suites compare the
//! library against these.

#![allow(dead_code)]

use std::collections::HashSet;
use std::sync::Arc;

use zerosum::{FiniteAbelianGroup, GroupElement, GroupSpec, Sequence, TablePolicy};

pub fn group(orders: &[u64]) -> Arc<FiniteAbelianGroup> {
    Arc::new(
        FiniteAbelianGroup::from_spec(&GroupSpec::new(orders.to_vec()), TablePolicy::Auto)
            .unwrap(),
    )
}

pub fn seq_of(group: &Arc<FiniteAbelianGroup>, indices: &[usize]) -> Sequence {
    let elements: Vec<GroupElement> = indices.iter().map(|&i| GroupElement(i)).collect();
    Sequence::from_slice(Arc::clone(group), &elements)
}

/// All isomorphism classes of abelian groups of order `m`, each as a list
/// of prime-power cyclic orders: one partition of the exponent per prime.
pub fn abelian_groups_of_order(m: u64) -> Vec<Vec<u64>> {
    fn partitions(n: u32) -> Vec<Vec<u32>> {
        fn rec(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if n == 0 {
                out.push(prefix.clone());
                return;
            }
            let mut part = max.min(n);
            while part >= 1 {
                prefix.push(part);
                rec(n - part, part, prefix, out);
                prefix.pop();
                part -= 1;
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut rest = m;
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            let mut e = 0u32;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += 1;
    }
    if rest > 1 {
        factors.push((rest, 1));
    }

    let mut specs: Vec<Vec<u64>> = vec![Vec::new()];
    for (p, e) in factors {
        let mut extended = Vec::new();
        for partition in partitions(e) {
            for spec in &specs {
                let mut next = spec.clone();
                for part in &partition {
                    next.push(p.pow(*part));
                }
                extended.push(next);
            }
        }
        specs = extended;
    }
    specs
}

/// Every abelian group with `1 <= |G| <= cap`, one spec per isomorphism
/// class.
pub fn all_groups_up_to(cap: u64) -> Vec<Vec<u64>> {
    (1..=cap).flat_map(abelian_groups_of_order).collect()
}

/// The subsum set by explicit enumeration of all nonempty index subsets.
pub fn subsums_brute(group: &FiniteAbelianGroup, elements: &[GroupElement]) -> HashSet<usize> {
    let l = elements.len();
    assert!(l <= 20, "brute subset enumeration capped");
    let mut out = HashSet::new();
    for mask in 1u32..(1 << l) {
        let mut sum = group.zero();
        for (i, &e) in elements.iter().enumerate() {
            if mask & (1 << i) != 0 {
                sum = group.add(sum, e);
            }
        }
        out.insert(sum.index());
    }
    out
}

/// Zero-sum freeness by running sums in a plain hash set.
pub fn zsf_naive(group: &FiniteAbelianGroup, elements: &[GroupElement]) -> bool {
    let mut sums: HashSet<usize> = HashSet::new();
    for &e in elements {
        let mut next = sums.clone();
        for &s in &sums {
            next.insert(group.add(GroupElement(s), e).index());
        }
        next.insert(e.index());
        if next.contains(&0) {
            return false;
        }
        sums = next;
    }
    true
}

/// Minimality straight from the definition: the sum vanishes and every
/// proper nonempty sub-multiset is zero-sum free.
pub fn minimal_brute(group: &FiniteAbelianGroup, elements: &[GroupElement]) -> bool {
    if elements.is_empty() {
        return false;
    }
    let total = elements
        .iter()
        .fold(group.zero(), |acc, &e| group.add(acc, e));
    if total != group.zero() {
        return false;
    }
    let l = elements.len();
    for mask in 1u32..((1 << l) - 1) {
        let subset: Vec<GroupElement> = elements
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &e)| e)
            .collect();
        if !zsf_naive(group, &subset) {
            return false;
        }
    }
    true
}

/// Calls `visit` with every canonical multiset (non-increasing indices,
/// zero element included) of length at most `max_len`, starting with the
/// empty one. Stops extending below multisets the filter rejects.
pub fn for_each_canonical_multiset<F, P>(
    group: &FiniteAbelianGroup,
    max_len: usize,
    keep_extending: P,
    visit: &mut F,
) where
    F: FnMut(&[GroupElement]),
    P: Fn(&[GroupElement]) -> bool + Copy,
{
    fn rec<F, P>(
        group: &FiniteAbelianGroup,
        max_len: usize,
        keep_extending: P,
        prefix: &mut Vec<GroupElement>,
        visit: &mut F,
    ) where
        F: FnMut(&[GroupElement]),
        P: Fn(&[GroupElement]) -> bool + Copy,
    {
        visit(prefix);
        if prefix.len() == max_len || !keep_extending(prefix) {
            return;
        }
        let bound = prefix.last().map(|g| g.index()).unwrap_or(group.size() - 1);
        for i in (0..=bound).rev() {
            prefix.push(GroupElement(i));
            rec(group, max_len, keep_extending, prefix, visit);
            prefix.pop();
        }
    }
    rec(group, max_len, keep_extending, &mut Vec::new(), visit);
}

/// All canonical zero-sum free multisets up to `max_len`, via the naive
/// zero-sum test only.
pub fn zsf_multisets_naive(group: &FiniteAbelianGroup, max_len: usize) -> Vec<Vec<GroupElement>> {
    let mut out = Vec::new();
    for_each_canonical_multiset(
        group,
        max_len,
        |prefix| zsf_naive(group, prefix),
        &mut |prefix| {
            if zsf_naive(group, prefix) {
                out.push(prefix.to_vec());
            }
        },
    );
    out
}

/// The naive maximal zero-sum free length: extend canonical multisets,
/// pruning extensions of anything that is not zero-sum free, up to
/// `max_len`.
pub fn davenport_naive(group: &FiniteAbelianGroup, max_len: usize) -> usize {
    let mut best = 0usize;
    for_each_canonical_multiset(
        group,
        max_len,
        |prefix| zsf_naive(group, prefix),
        &mut |prefix| {
            if prefix.len() > best && zsf_naive(group, prefix) {
                best = prefix.len();
            }
        },
    );
    best
}

/// Extension multisets of exactly `depth` elements by unrestricted brute
/// force over ordered tuples, canonicalized to non-increasing order.
pub fn sea_brute(
    group: &FiniteAbelianGroup,
    seed: &[GroupElement],
    depth: usize,
) -> Vec<Vec<usize>> {
    let mut found: HashSet<Vec<usize>> = HashSet::new();
    let mut tuple = vec![GroupElement(0); depth];
    fn rec(
        group: &FiniteAbelianGroup,
        seed: &[GroupElement],
        tuple: &mut Vec<GroupElement>,
        position: usize,
        found: &mut HashSet<Vec<usize>>,
    ) {
        if position == tuple.len() {
            let mut extended = seed.to_vec();
            extended.extend_from_slice(tuple);
            if zsf_naive(group, &extended) {
                let mut canonical: Vec<usize> = tuple.iter().map(|g| g.index()).collect();
                canonical.sort_unstable_by(|a, b| b.cmp(a));
                found.insert(canonical);
            }
            return;
        }
        for i in 0..group.size() {
            tuple[position] = GroupElement(i);
            rec(group, seed, tuple, position + 1, found);
        }
    }
    rec(group, seed, &mut tuple, 0, &mut found);
    let mut out: Vec<Vec<usize>> = found.into_iter().collect();
    out.sort();
    out
}

/// First split witness by materializing every candidate `T*` and testing it
/// naively; mirrors the canonical iteration order of the library call.
pub fn exists_split_brute(
    group: &FiniteAbelianGroup,
    t: &Sequence,
) -> Option<(usize, usize, usize)> {
    let support: Vec<GroupElement> = t.support().map(|(g, _)| g).collect();
    for g in support {
        let mut rest: Vec<GroupElement> = Vec::new();
        let mut dropped = false;
        for occurrence in t.occurrences() {
            if occurrence == g && !dropped {
                dropped = true;
                continue;
            }
            rest.push(occurrence);
        }
        for first in 0..group.size() {
            let second = group.sub(g, GroupElement(first));
            if second.index() < first {
                continue;
            }
            let mut candidate = rest.clone();
            candidate.push(GroupElement(first));
            candidate.push(second);
            if zsf_naive(group, &candidate) {
                return Some((g.index(), first, second.index()));
            }
        }
    }
    None
}
