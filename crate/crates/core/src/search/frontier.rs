//! The (allowed candidates, forbidden set) pair threaded through the search.

use crate::group::{FiniteAbelianGroup, GroupElement};
use crate::seq::Sequence;
use crate::subsum::SubsumSet;

use super::SearchError;

/// For a zero-sum free sequence `S`, the partition of the group into the
/// forbidden set `−Σ(S) ∪ {0}` and the ascending list of elements whose
/// addition keeps `S` zero-sum free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchFrontier {
    /// Ascending element indices not in `forbidden`.
    pub allowed: Vec<GroupElement>,
    /// `−Σ(S) ∪ {0}`; always contains the zero element.
    pub forbidden: SubsumSet,
}

impl SearchFrontier {
    /// Builds the frontier of a sequence from scratch.
    pub fn from_sequence(seq: &Sequence) -> SearchFrontier {
        let forbidden = seq.forbidden_set();
        let allowed = forbidden.complement_elements();
        SearchFrontier { allowed, forbidden }
    }

    /// One frontier update: extend the underlying sequence by `g`. Every
    /// still-allowed `h` moves to the forbidden side exactly when `g + h`
    /// was already forbidden; the rest stay candidates.
    pub fn sca(
        &self,
        group: &FiniteAbelianGroup,
        g: GroupElement,
    ) -> Result<SearchFrontier, SearchError> {
        if self.allowed.binary_search(&g).is_err() {
            return Err(SearchError::CandidateNotAllowed);
        }
        Ok(self.sca_unchecked(group, g))
    }

    pub(crate) fn sca_unchecked(
        &self,
        group: &FiniteAbelianGroup,
        g: GroupElement,
    ) -> SearchFrontier {
        let mut forbidden = self.forbidden.clone();
        let mut allowed = Vec::with_capacity(self.allowed.len());
        for &h in &self.allowed {
            if self.forbidden.contains(group.add(g, h)) {
                forbidden.insert(h);
            } else {
                allowed.push(h);
            }
        }
        SearchFrontier { allowed, forbidden }
    }
}
