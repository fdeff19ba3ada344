//! Sequences over a group: finite multisets of elements.
//!
//! A sequence stores its support sparsely (element index, multiplicity) and
//! iterates it in ascending index order, so every reduction over a sequence
//! is deterministic. The zero element is a legal member; it just makes the
//! sequence trivially not zero-sum free and is rejected by the cross number.
//!
//! The text format is one sequence per file: a `group:` header line with the
//! comma-separated cyclic orders, then one line per support element with its
//! coordinates and an optional `x<multiplicity>` suffix.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::group::{FiniteAbelianGroup, GroupElement, GroupError, GroupSpec, TablePolicy};
use crate::rational::Rational;
use crate::subsum::SubsumSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeqError {
    #[error("the zero element has no cross-number contribution")]
    ZeroElementInSequence,
    #[error("cannot remove an element that does not occur")]
    RemoveAbsent,
    #[error("the group is not cyclic")]
    NotCyclic,
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Group(#[from] GroupError),
}

fn parse_err(line: usize, message: impl Into<String>) -> SeqError {
    SeqError::Parse {
        line,
        message: message.into(),
    }
}

/// A finite multiset of group elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequence {
    group: Arc<FiniteAbelianGroup>,
    counts: BTreeMap<GroupElement, usize>,
    len: usize,
}

impl Sequence {
    pub fn empty(group: Arc<FiniteAbelianGroup>) -> Self {
        Sequence {
            group,
            counts: BTreeMap::new(),
            len: 0,
        }
    }

    pub fn from_slice(group: Arc<FiniteAbelianGroup>, elements: &[GroupElement]) -> Self {
        let mut seq = Sequence::empty(group);
        for &g in elements {
            seq.push(g);
        }
        seq
    }

    pub fn group(&self) -> &Arc<FiniteAbelianGroup> {
        &self.group
    }

    /// The length `|S|`, counting multiplicities.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// The multiplicity `v_g(S)`.
    pub fn multiplicity(&self, g: GroupElement) -> usize {
        self.counts.get(&g).copied().unwrap_or(0)
    }

    /// Support iteration in ascending element-index order.
    pub fn support(&self) -> impl Iterator<Item = (GroupElement, usize)> + '_ {
        self.counts.iter().map(|(&g, &m)| (g, m))
    }

    pub fn support_len(&self) -> usize {
        self.counts.len()
    }

    /// All occurrences, each element repeated by its multiplicity.
    pub fn occurrences(&self) -> impl Iterator<Item = GroupElement> + '_ {
        self.counts
            .iter()
            .flat_map(|(&g, &m)| std::iter::repeat_n(g, m))
    }

    pub fn push(&mut self, g: GroupElement) {
        self.push_many(g, 1);
    }

    pub fn push_many(&mut self, g: GroupElement, multiplicity: usize) {
        debug_assert!(self.group.contains(g));
        if multiplicity == 0 {
            return;
        }
        *self.counts.entry(g).or_insert(0) += multiplicity;
        self.len += multiplicity;
    }

    /// Removes one occurrence of `g`.
    pub fn remove_one(&mut self, g: GroupElement) -> Result<(), SeqError> {
        match self.counts.get_mut(&g) {
            Some(m) if *m > 1 => {
                *m -= 1;
            }
            Some(_) => {
                self.counts.remove(&g);
            }
            None => return Err(SeqError::RemoveAbsent),
        }
        self.len -= 1;
        Ok(())
    }

    /// The sum `σ(S)`; the empty sequence sums to zero.
    pub fn sigma(&self) -> GroupElement {
        let mut acc = self.group.zero();
        for (g, m) in self.support() {
            acc = self.group.add(acc, self.group.scalar_mul(m as u64, g));
        }
        acc
    }

    /// The exact subsum set `Σ(S)`, built occurrence by occurrence through
    /// the recurrence `Σ ← Σ ∪ (Σ + g) ∪ {g}`.
    pub fn subsums(&self) -> SubsumSet {
        let mut acc = SubsumSet::empty(self.group.size());
        for (g, m) in self.support() {
            for _ in 0..m {
                acc.accumulate(&self.group, g);
            }
        }
        acc
    }

    /// The forbidden set `−Σ(S) ∪ {0}`: exactly the elements whose addition
    /// would create a zero-sum subsequence.
    pub fn forbidden_set(&self) -> SubsumSet {
        let mut set = self.subsums().negated(&self.group);
        set.insert(self.group.zero());
        set
    }

    /// True iff `0 ∉ Σ(S)`. The empty sequence is zero-sum free.
    pub fn is_zero_sum_free(&self) -> bool {
        let zero = self.group.zero();
        let mut acc = SubsumSet::empty(self.group.size());
        for (g, m) in self.support() {
            for _ in 0..m {
                acc.accumulate(&self.group, g);
                if acc.contains(zero) {
                    return false;
                }
            }
        }
        true
    }

    /// True iff `S` is nonempty, sums to zero, and removing any single
    /// occurrence leaves a zero-sum free sequence. (Any proper zero-sum
    /// subsequence omits some occurrence, so this matches the definition.)
    pub fn is_minimal_zero_sum(&self) -> bool {
        if self.is_empty() || self.sigma() != self.group.zero() {
            return false;
        }
        for (g, _) in self.support() {
            let mut shorter = self.clone();
            shorter.remove_one(g).expect("support element present");
            if !shorter.is_zero_sum_free() {
                return false;
            }
        }
        true
    }

    /// The cross number `k(S) = Σ 1/ord(g_i)` over all occurrences.
    pub fn cross_number(&self) -> Result<Rational, SeqError> {
        if self.multiplicity(self.group.zero()) > 0 {
            return Err(SeqError::ZeroElementInSequence);
        }
        let mut sum = Rational::ZERO;
        for (g, m) in self.support() {
            sum += Rational::unit_fraction(self.group.element_order(g)).scaled(m as u64);
        }
        Ok(sum)
    }

    /// Canonical text form; see the module docs for the format.
    pub fn to_text(&self) -> String {
        let mut out = format!("group: {}\n", self.group.spec_string());
        let rank = self.group.orders().len();
        for (g, m) in self.support() {
            let coords = self.group.decode(g);
            let mut line = coords
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            if rank == 0 {
                line = format!("x{m}");
            } else if m > 1 {
                line.push_str(&format!(" x{m}"));
            }
            out.push_str(&line);
            out.push('\n');
        }
        out
    }

    /// Parses the text form, building the group from the header line.
    pub fn parse(text: &str) -> Result<Sequence, SeqError> {
        let mut lines = text.lines().enumerate();
        let (header_no, header) = loop {
            match lines.next() {
                Some((no, line)) if line.trim().is_empty() => {
                    let _ = no;
                    continue;
                }
                Some((no, line)) => break (no, line),
                None => return Err(parse_err(1, "missing `group:` header")),
            }
        };
        let header = header.trim();
        let orders_text = header
            .strip_prefix("group:")
            .ok_or_else(|| parse_err(header_no + 1, "first line must start with `group:`"))?;
        let spec = GroupSpec::parse(orders_text)
            .map_err(|e| parse_err(header_no + 1, e.to_string()))?;
        let group = Arc::new(FiniteAbelianGroup::from_spec(&spec, TablePolicy::Auto)?);
        let rank = group.orders().len();

        let mut seq = Sequence::empty(group);
        for (no, raw) in lines {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let mut tokens: Vec<&str> = line.split_whitespace().collect();
            let mut multiplicity = 1usize;
            if let Some(last) = tokens.last() {
                if let Some(digits) = last.strip_prefix('x') {
                    if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
                        multiplicity = digits
                            .parse()
                            .map_err(|_| parse_err(no + 1, "bad multiplicity"))?;
                        if multiplicity == 0 {
                            return Err(parse_err(no + 1, "multiplicity must be at least 1"));
                        }
                        tokens.pop();
                    }
                }
            }
            if tokens.len() != rank {
                return Err(parse_err(
                    no + 1,
                    format!("expected {rank} coordinates, found {}", tokens.len()),
                ));
            }
            let mut coords = Vec::with_capacity(rank);
            for token in tokens {
                let value: u64 = token
                    .parse()
                    .map_err(|_| parse_err(no + 1, format!("bad coordinate `{token}`")))?;
                coords.push(value);
            }
            let g = seq.group.encode(&coords);
            seq.push_many(g, multiplicity);
        }
        Ok(seq)
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "(empty)");
        }
        let mut first = true;
        for (g, m) in self.support() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let coords = self.group.decode(g);
            write!(
                f,
                "({})",
                coords
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )?;
            if m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

/// A witness for the structure of a long zero-sum free sequence over a
/// cyclic group: every element is `n_i · g`, the multipliers start at 1,
/// their sum `m` stays below `ord(g)`, and the subsums form the interval
/// `{g, 2g, ..., mg}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SavchevChenWitness {
    pub generator: GroupElement,
    /// Sorted ascending; the first is always 1 when the sequence is nonempty.
    pub multipliers: Vec<u64>,
}

impl SavchevChenWitness {
    /// Rebuilds the sequence `∏ (n_i · g)` the witness describes.
    pub fn reconstruct(&self, group: &Arc<FiniteAbelianGroup>) -> Sequence {
        let mut seq = Sequence::empty(Arc::clone(group));
        for &k in &self.multipliers {
            seq.push(group.scalar_mul(k, self.generator));
        }
        seq
    }
}

/// Searches all generators `g` in ascending index order for the full
/// structural form and returns the first witness, or `None` when no
/// generator admits it. The group must be cyclic.
pub fn savchev_chen_decompose(
    seq: &Sequence,
) -> Result<Option<SavchevChenWitness>, SeqError> {
    let group = seq.group();
    if !group.is_cyclic() {
        return Err(SeqError::NotCyclic);
    }
    let size = group.size();
    let subsums = seq.subsums();

    'candidates: for g in group.elements() {
        let order = group.element_order(g);
        // discrete logs of the support elements in base g
        let mut multipliers = Vec::with_capacity(seq.len());
        for (x, mult) in seq.support() {
            let mut found = None;
            let mut walk = group.zero();
            for k in 1..order {
                walk = group.add(walk, g);
                if walk == x {
                    found = Some(k);
                    break;
                }
            }
            match found {
                Some(k) => multipliers.extend(std::iter::repeat_n(k, mult)),
                None => continue 'candidates,
            }
        }
        multipliers.sort_unstable();
        if let Some(&first) = multipliers.first() {
            if first != 1 {
                continue;
            }
        }
        let m: u64 = multipliers.iter().sum();
        if m >= order {
            continue;
        }
        // Σ(S) must be exactly {g, 2g, ..., mg}
        let mut expected = SubsumSet::empty(size);
        let mut walk = group.zero();
        for _ in 0..m {
            walk = group.add(walk, g);
            expected.insert(walk);
        }
        if expected == subsums {
            return Ok(Some(SavchevChenWitness {
                generator: g,
                multipliers,
            }));
        }
    }
    Ok(None)
}
