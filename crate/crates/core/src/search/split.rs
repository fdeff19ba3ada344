//! The split-nonexistence check: can some element of a zero-sum free
//! sequence be replaced by two elements summing to it, keeping the result
//! zero-sum free?

use crate::group::GroupElement;
use crate::seq::Sequence;

use super::SearchError;

/// A successful split: removing one occurrence of `removed` and appending
/// `first` and `second` (with `first + second = removed`) keeps the
/// sequence zero-sum free.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitWitness {
    pub removed: GroupElement,
    pub first: GroupElement,
    pub second: GroupElement,
}

/// Searches every support element `g` of `t` (ascending) and every pair
/// `g_1 + g_2 = g` with `g_1 <= g_2` (ascending in `g_1`) for a valid
/// split, returning the first one.
///
/// With `T' = T g^{-1}` and `σ' = −Σ(T') ∪ {0}`, the candidate pair is
/// valid iff `g_1 ∉ σ'` and `g_2 ∉ σ'`: subsequences using both new
/// elements sum through `g_1 + g_2 = g`, whose avoidance is automatic
/// because `T = T' g` is zero-sum free.
pub fn exists_split(t: &Sequence) -> Result<Option<SplitWitness>, SearchError> {
    if !t.is_zero_sum_free() {
        return Err(SearchError::NotZeroSumFree);
    }
    let group = t.group();
    let support: Vec<GroupElement> = t.support().map(|(g, _)| g).collect();
    for g in support {
        let mut shorter = t.clone();
        shorter.remove_one(g).expect("support element present");
        let forbidden = shorter.forbidden_set();
        // g = g_1 + g_2 itself is never forbidden: T = T' g is zero-sum free
        debug_assert!(!forbidden.contains(g));
        for first in group.elements() {
            let second = group.sub(g, first);
            if second < first {
                continue;
            }
            if !forbidden.contains(first) && !forbidden.contains(second) {
                return Ok(Some(SplitWitness {
                    removed: g,
                    first,
                    second,
                }));
            }
        }
    }
    Ok(None)
}
