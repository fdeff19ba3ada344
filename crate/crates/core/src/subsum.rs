//! Dense bitsets over all elements of a group.
//!
//! A `SubsumSet` tracks membership of every group element, indexed by the
//! mixed-radix element index. The incremental subsum recurrence
//! `S ∪ (S + g) ∪ {g}` needs a fast "translate every member by `g`"
//! operation; [`SubsumSet::shifted`] does that blockwise along the last
//! coordinate axis so the inner loop is one table lookup per set bit instead
//! of a full mixed-radix decode.

use crate::group::{FiniteAbelianGroup, GroupElement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsumSet {
    bits: Vec<u64>,
    universe: usize,
    count: usize,
}

impl SubsumSet {
    pub fn empty(universe: usize) -> Self {
        SubsumSet {
            bits: vec![0; universe.div_ceil(64)],
            universe,
            count: 0,
        }
    }

    pub fn from_elements<I: IntoIterator<Item = GroupElement>>(universe: usize, iter: I) -> Self {
        let mut set = SubsumSet::empty(universe);
        for g in iter {
            set.insert(g);
        }
        set
    }

    /// Number of group elements the set ranges over, i.e. `|G|`.
    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Number of members.
    pub fn count(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    #[inline]
    pub fn contains(&self, g: GroupElement) -> bool {
        debug_assert!(g.0 < self.universe);
        self.bits[g.0 >> 6] & (1u64 << (g.0 & 63)) != 0
    }

    /// Inserts and reports whether the element was new.
    #[inline]
    pub fn insert(&mut self, g: GroupElement) -> bool {
        debug_assert!(g.0 < self.universe);
        let word = &mut self.bits[g.0 >> 6];
        let mask = 1u64 << (g.0 & 63);
        if *word & mask == 0 {
            *word |= mask;
            self.count += 1;
            true
        } else {
            false
        }
    }

    pub fn union_with(&mut self, other: &SubsumSet) {
        debug_assert_eq!(self.universe, other.universe);
        let mut count = 0usize;
        for (w, &o) in self.bits.iter_mut().zip(&other.bits) {
            *w |= o;
            count += w.count_ones() as usize;
        }
        self.count = count;
    }

    /// Members in ascending element-index order.
    pub fn iter(&self) -> SetBits<'_> {
        SetBits {
            bits: &self.bits,
            word_index: 0,
            current: self.bits.first().copied().unwrap_or(0),
        }
    }

    /// Elements of the universe *not* in the set, ascending. This is the
    /// candidate list paired with a forbidden set in the search frontier.
    pub fn complement_elements(&self) -> Vec<GroupElement> {
        let mut out = Vec::with_capacity(self.universe - self.count);
        for (word_index, &word) in self.bits.iter().enumerate() {
            let mut inv = !word;
            // mask off the tail beyond the universe
            let base = word_index << 6;
            if base + 64 > self.universe {
                let valid = self.universe - base;
                if valid == 0 {
                    break;
                }
                inv &= (1u64 << valid) - 1;
            }
            while inv != 0 {
                let bit = inv.trailing_zeros() as usize;
                inv &= inv - 1;
                out.push(GroupElement(base | bit));
            }
        }
        out
    }

    /// The translate `{ x + g : x ∈ self }`.
    ///
    /// Walks set bits in blocks of the last coordinate axis; the outer
    /// coordinates advance through an odometer so each block's translated
    /// base index costs O(1) amortized.
    pub fn shifted(&self, group: &FiniteAbelianGroup, g: GroupElement) -> SubsumSet {
        debug_assert_eq!(self.universe, group.size());
        let mut out = SubsumSet::empty(self.universe);
        if self.count == 0 {
            return out;
        }
        let orders = group.orders();
        let rank = orders.len();
        if rank == 0 {
            out.bits.copy_from_slice(&self.bits);
            out.count = self.count;
            return out;
        }
        let strides = group.strides();
        let g_coords = group.decode(g);

        let last_len = orders[rank - 1] as usize;
        let g_last = g_coords[rank - 1] as usize;
        let mut last_map = Vec::with_capacity(last_len);
        for j in 0..last_len {
            let mut t = j + g_last;
            if t >= last_len {
                t -= last_len;
            }
            last_map.push(t);
        }

        let outer = rank - 1;
        let mut coords = vec![0usize; outer];
        let mut shifted_coords = vec![0usize; outer];
        let mut out_base = 0usize;
        for a in 0..outer {
            let t = g_coords[a] as usize;
            shifted_coords[a] = t;
            out_base += t * strides[a];
        }
        let mut block_start = 0usize;

        for (word_index, &stored) in self.bits.iter().enumerate() {
            let mut word = stored;
            while word != 0 {
                let bit = word.trailing_zeros() as usize;
                word &= word - 1;
                let idx = (word_index << 6) | bit;
                while idx >= block_start + last_len {
                    block_start += last_len;
                    for a in (0..outer).rev() {
                        let m = orders[a] as usize;
                        let stride = strides[a];
                        coords[a] += 1;
                        if coords[a] < m {
                            let t = shifted_coords[a];
                            if t + 1 == m {
                                shifted_coords[a] = 0;
                                out_base -= t * stride;
                            } else {
                                shifted_coords[a] = t + 1;
                                out_base += stride;
                            }
                            break;
                        }
                        coords[a] = 0;
                        let old = shifted_coords[a];
                        let new = g_coords[a] as usize;
                        shifted_coords[a] = new;
                        if new >= old {
                            out_base += (new - old) * stride;
                        } else {
                            out_base -= (old - new) * stride;
                        }
                    }
                }
                let j = idx - block_start;
                out.set_unchecked(out_base + last_map[j]);
            }
        }
        // translation is a bijection, so no collisions occurred
        out.count = self.count;
        out
    }

    /// The image `{ -x : x ∈ self }`.
    pub fn negated(&self, group: &FiniteAbelianGroup) -> SubsumSet {
        debug_assert_eq!(self.universe, group.size());
        let mut out = SubsumSet::empty(self.universe);
        for g in self.iter() {
            out.set_unchecked(group.neg(g).0);
        }
        out.count = self.count;
        out
    }

    /// One step of the subsum recurrence: `self ← self ∪ (self + g) ∪ {g}`.
    pub fn accumulate(&mut self, group: &FiniteAbelianGroup, g: GroupElement) {
        let shifted = self.shifted(group, g);
        self.union_with(&shifted);
        self.insert(g);
    }

    #[inline]
    fn set_unchecked(&mut self, index: usize) {
        self.bits[index >> 6] |= 1u64 << (index & 63);
    }
}

pub struct SetBits<'a> {
    bits: &'a [u64],
    word_index: usize,
    current: u64,
}

impl Iterator for SetBits<'_> {
    type Item = GroupElement;

    fn next(&mut self) -> Option<GroupElement> {
        while self.current == 0 {
            self.word_index += 1;
            if self.word_index >= self.bits.len() {
                return None;
            }
            self.current = self.bits[self.word_index];
        }
        let bit = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(GroupElement((self.word_index << 6) | bit))
    }
}
