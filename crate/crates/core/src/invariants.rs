//! Closed-form group invariants and builders for two explicit families of
//! extremal sequences.
//!
//! The builders only *state* their claims; nothing here asserts them. The
//! claims are re-verified from scratch through the sequence operations (see
//! [`ConstructionResult::verify`]), so a transcription slip in a generator
//! table shows up as a failed claim instead of being silently trusted.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::group::{FiniteAbelianGroup, GroupElement, GroupError, GroupSpec, TablePolicy};
use crate::rational::Rational;
use crate::seq::Sequence;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("n must be odd and at least 3")]
    EvenOrSmallN,
    #[error("the rank must be at least 5")]
    RankTooSmall,
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("the trivial group has no upper-bound value")]
    TrivialGroup,
}

/// `d*(G)`: the sum of `n_i - 1` over the invariant-factor chain; 0 for the
/// trivial group. Always a lower bound for the maximal zero-sum free length.
pub fn d_star(group: &FiniteAbelianGroup) -> usize {
    group
        .invariant_factors()
        .iter()
        .map(|&n| (n - 1) as usize)
        .sum()
}

/// `k*(G)`: the sum of `(q - 1)/q` over the prime-power decomposition; 0 for
/// the trivial group. Equals the cross number of a prime-power basis
/// sequence, so it bounds the little cross number from below.
pub fn k_star(group: &FiniteAbelianGroup) -> Rational {
    group
        .primary_decomposition()
        .iter()
        .map(|&(_, q)| Rational::new(q as i64 - 1, q as i64))
        .sum()
}

/// The classical upper bound `(n_r - 1) + n_r * ln(|G| / n_r)` on the
/// maximal zero-sum free length, with the natural logarithm. For cyclic
/// groups the logarithm vanishes and the bound is exactly `n - 1`.
pub fn davenport_upper_bound(group: &FiniteAbelianGroup) -> Result<f64, InvariantError> {
    let &last = group
        .invariant_factors()
        .last()
        .ok_or(InvariantError::TrivialGroup)?;
    let quotient = group.size() as f64 / last as f64;
    Ok((last - 1) as f64 + last as f64 * quotient.ln())
}

/// The conjectured cross-number bound `Σ (n_i - 1)/n_i` over the
/// invariant-factor chain.
pub fn girard_bound(group: &FiniteAbelianGroup) -> Rational {
    group
        .invariant_factors()
        .iter()
        .map(|&n| Rational::new(n as i64 - 1, n as i64))
        .sum()
}

/// A property a construction asserts about its sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Claim {
    ZeroSumFree,
    MinimalZeroSum,
    Length(usize),
    /// `|S| = d*(G) + offset`.
    LengthIsDStarPlus(i64),
    /// Removing one occurrence of the element leaves a zero-sum free
    /// sequence.
    ZeroSumFreeAfterRemoving(GroupElement),
    CrossNumber(Rational),
    /// The element occurs with this multiplicity and has this order.
    MultiplicityOfOrder {
        element: GroupElement,
        order: u64,
        multiplicity: usize,
    },
}

/// A built sequence together with the claims made for it.
#[derive(Debug, Clone)]
pub struct ConstructionResult {
    pub group: Arc<FiniteAbelianGroup>,
    pub sequence: Sequence,
    pub claimed_length: usize,
    pub claims: Vec<Claim>,
}

impl ConstructionResult {
    /// Re-checks every claim against the sequence operations.
    pub fn verify(&self) -> Vec<(Claim, bool)> {
        self.claims
            .iter()
            .map(|claim| (claim.clone(), self.claim_holds(claim)))
            .collect()
    }

    pub fn verified(&self) -> bool {
        self.claimed_length == self.sequence.len()
            && self.claims.iter().all(|c| self.claim_holds(c))
    }

    fn claim_holds(&self, claim: &Claim) -> bool {
        match claim {
            Claim::ZeroSumFree => self.sequence.is_zero_sum_free(),
            Claim::MinimalZeroSum => self.sequence.is_minimal_zero_sum(),
            Claim::Length(len) => self.sequence.len() == *len && self.claimed_length == *len,
            Claim::LengthIsDStarPlus(offset) => {
                self.sequence.len() as i64 == d_star(&self.group) as i64 + offset
            }
            Claim::ZeroSumFreeAfterRemoving(g) => {
                let mut shorter = self.sequence.clone();
                shorter.remove_one(*g).is_ok() && shorter.is_zero_sum_free()
            }
            Claim::CrossNumber(expected) => self.sequence.cross_number() == Ok(*expected),
            Claim::MultiplicityOfOrder {
                element,
                order,
                multiplicity,
            } => {
                self.group.element_order(*element) == *order
                    && self.sequence.multiplicity(*element) == *multiplicity
            }
        }
    }

    /// Human-readable label for a claim, with coordinates spelled out.
    pub fn claim_label(&self, claim: &Claim) -> String {
        let coords = |g: &GroupElement| {
            let c = self.group.decode(*g);
            format!(
                "({})",
                c.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        };
        match claim {
            Claim::ZeroSumFree => "zero-sum free".to_string(),
            Claim::MinimalZeroSum => "minimal zero-sum".to_string(),
            Claim::Length(len) => format!("length == {len}"),
            Claim::LengthIsDStarPlus(offset) if *offset >= 0 => {
                format!("length == d* + {offset}")
            }
            Claim::LengthIsDStarPlus(offset) => format!("length == d* - {}", -offset),
            Claim::ZeroSumFreeAfterRemoving(g) => {
                format!("zero-sum free after removing {}", coords(g))
            }
            Claim::CrossNumber(k) => format!("cross number == {k}"),
            Claim::MultiplicityOfOrder {
                element,
                order,
                multiplicity,
            } => format!(
                "element {} has order {order} and multiplicity {multiplicity}",
                coords(element)
            ),
        }
    }
}

fn require_odd(n: u64) -> Result<(), ConstructionError> {
    if n < 3 || n % 2 == 0 {
        Err(ConstructionError::EvenOrSmallN)
    } else {
        Ok(())
    }
}

/// The twelve generator coordinate vectors over `C_2 ⊕ C_{2n}^4` in the
/// standard basis `(e_1, ..., e_5)`, `ord(e_1) = 2`.
fn long_minimal_generators(n: u64) -> [[u64; 5]; 12] {
    let lo = (n - 1) / 2; // (n-1)/2
    let lo1 = (n + 1) / 2; // (n+1)/2
    let lo3 = (n + 3) / 2; // (n+3)/2
    let hi = (3 * n - 1) / 2; // (3n-1)/2
    let hi1 = (3 * n + 1) / 2; // (3n+1)/2
    let hi3 = (3 * n + 3) / 2; // (3n+3)/2
    [
        [1, 1, 0, 0, 0],
        [1, 0, 1, 0, 0],
        [1, 0, 0, 1, 0],
        [1, 0, 0, 0, 1],
        [0, hi, hi1, hi1, hi1],
        [0, hi, hi1, hi, lo1],
        [0, hi3, lo1, lo, lo1],
        [0, lo, lo1, hi1, lo],
        [0, lo, lo1, lo1, lo1],
        [0, hi1, hi1, lo1, hi1],
        [0, lo3, hi1, hi1, hi],
        [1, lo1, lo, lo1, hi1],
    ]
}

fn multiplicities(n: u64) -> [usize; 12] {
    let heavy = (2 * n - 2) as usize;
    [
        heavy,
        heavy - 1,
        heavy,
        heavy,
        1,
        1,
        1,
        1,
        1,
        1,
        1,
        1,
    ]
}

/// Builds the minimal zero-sum sequence `U` of length `8n - 1 = d*(G) + 2`
/// over `G = C_2 ⊕ C_{2n}^4` for odd `n >= 3`. Dropping the last generator
/// leaves the zero-sum free sequence `S*` of length `8n - 2`.
pub fn build_theorem31(n: u64) -> Result<ConstructionResult, ConstructionError> {
    require_odd(n)?;
    let spec = GroupSpec::new(vec![2, 2 * n, 2 * n, 2 * n, 2 * n]);
    let group = Arc::new(FiniteAbelianGroup::from_spec(&spec, TablePolicy::Auto)?);

    let mut sequence = Sequence::empty(Arc::clone(&group));
    let coords = long_minimal_generators(n);
    let mult = multiplicities(n);
    let mut last = group.zero();
    for (c, m) in coords.iter().zip(mult) {
        last = group.encode(c);
        sequence.push_many(last, m);
    }

    let length = (8 * n - 1) as usize;
    Ok(ConstructionResult {
        group,
        sequence,
        claimed_length: length,
        claims: vec![
            Claim::Length(length),
            Claim::LengthIsDStarPlus(2),
            Claim::MinimalZeroSum,
            Claim::ZeroSumFreeAfterRemoving(last),
        ],
    })
}

/// Builds the zero-sum free sequence `T` over `G = C_{2n}^r` for odd
/// `n >= 3` and `r >= 5`: the order-`n` element `2e_1'` with multiplicity
/// `n - 1`, the embedded `S*` (through `e_1 = n e_1'`), and a full basis
/// tail `e_i^{2n-1}` for the remaining factors.
pub fn build_corollary32(n: u64, r: usize) -> Result<ConstructionResult, ConstructionError> {
    require_odd(n)?;
    if r < 5 {
        return Err(ConstructionError::RankTooSmall);
    }
    let spec = GroupSpec::new(vec![2 * n; r]);
    let group = Arc::new(FiniteAbelianGroup::from_spec(&spec, TablePolicy::Auto)?);

    let mut sequence = Sequence::empty(Arc::clone(&group));

    let embed = |c5: &[u64; 5]| {
        let mut coords = vec![0u64; r];
        coords[0] = c5[0] * n; // e_1 = n * e_1'
        coords[1..5].copy_from_slice(&c5[1..5]);
        group.encode(&coords)
    };

    // (2 e_1')^{n-1}
    let mut coords = vec![0u64; r];
    coords[0] = 2;
    let doubled = group.encode(&coords);
    sequence.push_many(doubled, (n - 1) as usize);

    // S*: the first eleven generators (the twelfth is the dropped one)
    let gens = long_minimal_generators(n);
    let mult = multiplicities(n);
    for (c, m) in gens.iter().zip(mult).take(11) {
        sequence.push_many(embed(c), m);
    }

    // basis tail e_6^{2n-1} ... e_r^{2n-1}
    for i in 5..r {
        let mut coords = vec![0u64; r];
        coords[i] = 1;
        sequence.push_many(group.encode(&coords), (2 * n - 1) as usize);
    }

    let length = sequence.len();
    let cross = Rational::new((r as i64) * (2 * n as i64 - 1) + 1, 2 * n as i64);
    Ok(ConstructionResult {
        group,
        sequence,
        claimed_length: length,
        claims: vec![
            Claim::ZeroSumFree,
            Claim::LengthIsDStarPlus(-(n as i64 - 2)),
            Claim::MultiplicityOfOrder {
                element: doubled,
                order: n,
                multiplicity: (n - 1) as usize,
            },
            Claim::CrossNumber(cross),
        ],
    })
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::ZeroSumFree => write!(f, "zero-sum free"),
            Claim::MinimalZeroSum => write!(f, "minimal zero-sum"),
            Claim::Length(len) => write!(f, "length == {len}"),
            Claim::LengthIsDStarPlus(offset) if *offset >= 0 => {
                write!(f, "length == d* + {offset}")
            }
            Claim::LengthIsDStarPlus(offset) => write!(f, "length == d* - {}", -offset),
            Claim::ZeroSumFreeAfterRemoving(g) => {
                write!(f, "zero-sum free after removing element #{}", g.index())
            }
            Claim::CrossNumber(k) => write!(f, "cross number == {k}"),
            Claim::MultiplicityOfOrder {
                element,
                order,
                multiplicity,
            } => write!(
                f,
                "element #{} has order {order} and multiplicity {multiplicity}",
                element.index()
            ),
        }
    }
}
