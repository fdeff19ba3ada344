//! Finite abelian groups presented as direct sums of cyclic groups.
//!
//! A group is described by a list of cyclic factor orders (the construction
//! basis). An element is stored as a single mixed-radix index into the
//! coordinate box, most significant coordinate first, so comparing indices is
//! the same as comparing coordinate vectors lexicographically. The search
//! code leans on this: its "ascending sequence" restriction is exactly the
//! index order.
//!
//! A negation table is always precomputed (it is `|G|` entries and the
//! forbidden-set construction uses it constantly). The full `|G|^2`
//! subtraction table is optional; it is laid out row-major by minuend so a
//! fixed-minuend scan walks one contiguous row.

use std::fmt;

use thiserror::Error;

/// Largest `|G|` for which [`TablePolicy::Auto`] builds the subtraction
/// table (the table is `|G|^2` entries; at this cap it stays at 64Ki entries,
/// 256 KiB). Bigger groups need [`TablePolicy::Always`].
pub const AUTO_SUBTRACTION_TABLE_MAX: usize = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("cyclic factor orders must be at least 1")]
    InvalidOrder,
    #[error("group size overflows the supported index range")]
    SizeOverflow,
    #[error("invalid group spec `{0}`")]
    InvalidSpec(String),
}

/// A user-supplied list of cyclic factor orders, in any order and not
/// necessarily a divisor chain. Factors equal to 1 are legal and dropped
/// when the group is built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    orders: Vec<u64>,
}

impl GroupSpec {
    pub fn new(orders: Vec<u64>) -> Self {
        GroupSpec { orders }
    }

    /// Parses the comma-separated order list used everywhere a group is
    /// named, e.g. `"2,6,6,6,6"`. An empty string is the trivial group.
    pub fn parse(text: &str) -> Result<Self, GroupError> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(GroupSpec::new(Vec::new()));
        }
        let mut orders = Vec::new();
        for part in text.split(',') {
            let order: u64 = part
                .trim()
                .parse()
                .map_err(|_| GroupError::InvalidSpec(text.to_string()))?;
            if order == 0 {
                return Err(GroupError::InvalidOrder);
            }
            orders.push(order);
        }
        Ok(GroupSpec::new(orders))
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// The invariant-factor divisor chain `n_1 | n_2 | ... | n_r` of the
    /// group this spec presents. Computed by splitting every order into
    /// prime powers and regrouping greedily from the largest prime powers
    /// down; the trivial group has the empty chain.
    pub fn invariant_factors(&self) -> Result<Vec<u64>, GroupError> {
        let primary = self.primary_decomposition()?;
        Ok(invariant_factors_from_primary(&primary))
    }

    /// Prime-power factors `(p, p^e)` of all cyclic orders, sorted by prime
    /// then by power. The length of the list is the total rank.
    pub fn primary_decomposition(&self) -> Result<Vec<(u64, u64)>, GroupError> {
        let mut primary = Vec::new();
        for &order in &self.orders {
            if order == 0 {
                return Err(GroupError::InvalidOrder);
            }
            factorize_into(order, &mut primary);
        }
        primary.sort_unstable();
        Ok(primary)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "1");
        }
        for (i, order) in self.orders.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{order}")?;
        }
        Ok(())
    }
}

/// An element of a [`FiniteAbelianGroup`], encoded as a mixed-radix index in
/// `[0, |G|)`. Index order is lexicographic order on coordinate vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GroupElement(pub usize);

impl GroupElement {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

/// Whether to precompute the `|G|^2` subtraction table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TablePolicy {
    /// Build it only for groups up to [`AUTO_SUBTRACTION_TABLE_MAX`].
    Auto,
    /// Build it regardless of size. The table is 4 bytes per entry, so this
    /// is an explicit opt-in for big groups (1.6 GB at `|G| = 20000`).
    Always,
    Never,
}

/// A finite abelian group with precomputed decompositions and tables.
///
/// Immutable after construction; share it freely across workers.
pub struct FiniteAbelianGroup {
    orders: Vec<u64>,
    strides: Vec<usize>,
    size: usize,
    invariant_factors: Vec<u64>,
    primary_factors: Vec<(u64, u64)>,
    neg_table: Vec<u32>,
    sub_table: Option<Vec<u32>>,
}

impl FiniteAbelianGroup {
    pub fn from_spec(spec: &GroupSpec, policy: TablePolicy) -> Result<Self, GroupError> {
        let mut orders = Vec::new();
        for &order in spec.orders() {
            if order == 0 {
                return Err(GroupError::InvalidOrder);
            }
            if order > 1 {
                orders.push(order);
            }
        }
        let mut size: usize = 1;
        for &order in &orders {
            let order: usize = order.try_into().map_err(|_| GroupError::SizeOverflow)?;
            size = size.checked_mul(order).ok_or(GroupError::SizeOverflow)?;
        }
        // Element indices get stored in u32 tables and vectors.
        if u32::try_from(size.saturating_sub(1)).is_err() {
            return Err(GroupError::SizeOverflow);
        }

        // Row-major strides: first coordinate most significant.
        let rank = orders.len();
        let mut strides = vec![1usize; rank];
        for i in (0..rank.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * orders[i + 1] as usize;
        }

        let primary_factors = GroupSpec::new(orders.clone()).primary_decomposition()?;
        let invariant_factors = invariant_factors_from_primary(&primary_factors);

        let mut group = FiniteAbelianGroup {
            orders,
            strides,
            size,
            invariant_factors,
            primary_factors,
            neg_table: Vec::new(),
            sub_table: None,
        };
        group.neg_table = (0..size)
            .map(|i| group.neg_free(GroupElement(i)).0 as u32)
            .collect();

        let build_sub = match policy {
            TablePolicy::Always => true,
            TablePolicy::Never => false,
            TablePolicy::Auto => size <= AUTO_SUBTRACTION_TABLE_MAX,
        };
        if build_sub {
            let entries = size.checked_mul(size).ok_or(GroupError::SizeOverflow)?;
            let mut table = Vec::new();
            table
                .try_reserve_exact(entries)
                .map_err(|_| GroupError::SizeOverflow)?;
            for a in 0..size {
                for b in 0..size {
                    table.push(group.sub_free(GroupElement(a), GroupElement(b)).0 as u32);
                }
            }
            group.sub_table = Some(table);
        }
        Ok(group)
    }

    /// Normalized construction-basis orders (factors of 1 dropped).
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_trivial(&self) -> bool {
        self.size == 1
    }

    /// The divisor chain `n_1 | ... | n_r`; empty for the trivial group.
    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    /// Prime-power factors `(p, q)` sorted by prime then power.
    pub fn primary_decomposition(&self) -> &[(u64, u64)] {
        &self.primary_factors
    }

    /// Rank: length of the invariant-factor chain.
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Total rank: number of prime-power factors.
    pub fn total_rank(&self) -> usize {
        self.primary_factors.len()
    }

    /// Number of prime-power factors for the prime `p`.
    pub fn p_rank(&self, p: u64) -> usize {
        self.primary_factors.iter().filter(|&&(q, _)| q == p).count()
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.len() <= 1
    }

    #[inline]
    pub fn zero(&self) -> GroupElement {
        GroupElement(0)
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> {
        (0..self.size).map(GroupElement)
    }

    pub fn contains(&self, a: GroupElement) -> bool {
        a.0 < self.size
    }

    /// Mixed-radix strides, most significant coordinate first.
    pub fn strides(&self) -> &[usize] {
        &self.strides
    }

    /// Encodes a coordinate vector; each coordinate is reduced modulo its
    /// cyclic order. Panics if the length does not match the basis rank.
    pub fn encode(&self, coords: &[u64]) -> GroupElement {
        assert_eq!(
            coords.len(),
            self.orders.len(),
            "coordinate vector length must match the number of cyclic factors"
        );
        let mut index = 0usize;
        for (i, &c) in coords.iter().enumerate() {
            index += (c % self.orders[i]) as usize * self.strides[i];
        }
        GroupElement(index)
    }

    pub fn decode(&self, a: GroupElement) -> Vec<u64> {
        debug_assert!(a.0 < self.size);
        let mut rest = a.0;
        let mut coords = Vec::with_capacity(self.orders.len());
        for &stride in &self.strides {
            coords.push((rest / stride) as u64);
            rest %= stride;
        }
        coords
    }

    #[inline]
    pub fn add(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        if let Some(table) = &self.sub_table {
            // a + b = a - (-b); the row for minuend a is contiguous.
            let nb = self.neg_table[b.0] as usize;
            GroupElement(table[a.0 * self.size + nb] as usize)
        } else {
            self.add_free(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: GroupElement) -> GroupElement {
        GroupElement(self.neg_table[a.0] as usize)
    }

    #[inline]
    pub fn sub(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        if let Some(table) = &self.sub_table {
            GroupElement(table[a.0 * self.size + b.0] as usize)
        } else {
            self.add_free(a, self.neg(b))
        }
    }

    fn add_free(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        debug_assert!(a.0 < self.size && b.0 < self.size);
        let mut ra = a.0;
        let mut rb = b.0;
        let mut out = 0usize;
        for (i, &stride) in self.strides.iter().enumerate() {
            let m = self.orders[i] as usize;
            let da = ra / stride;
            ra %= stride;
            let db = rb / stride;
            rb %= stride;
            let mut d = da + db;
            if d >= m {
                d -= m;
            }
            out += d * stride;
        }
        GroupElement(out)
    }

    fn neg_free(&self, a: GroupElement) -> GroupElement {
        let mut rest = a.0;
        let mut out = 0usize;
        for (i, &stride) in self.strides.iter().enumerate() {
            let m = self.orders[i] as usize;
            let d = rest / stride;
            rest %= stride;
            if d != 0 {
                out += (m - d) * stride;
            }
        }
        GroupElement(out)
    }

    fn sub_free(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        self.add_free(a, self.neg_free(b))
    }

    /// The multiple `k * a`, computed coordinatewise.
    pub fn scalar_mul(&self, k: u64, a: GroupElement) -> GroupElement {
        debug_assert!(a.0 < self.size);
        let mut rest = a.0;
        let mut out = 0usize;
        for (i, &stride) in self.strides.iter().enumerate() {
            let m = self.orders[i];
            let c = (rest / stride) as u64;
            rest %= stride;
            let d = ((k as u128 * c as u128) % m as u128) as usize;
            out += d * stride;
        }
        GroupElement(out)
    }

    /// Least `m >= 1` with `m * a = 0`: the lcm over coordinates of
    /// `order_i / gcd(order_i, coord_i)`.
    pub fn element_order(&self, a: GroupElement) -> u64 {
        debug_assert!(a.0 < self.size);
        let mut rest = a.0;
        let mut order = 1u64;
        for (i, &stride) in self.strides.iter().enumerate() {
            let c = (rest / stride) as u64;
            rest %= stride;
            let m = self.orders[i];
            let coord_order = m / gcd(m, c);
            order = lcm(order, coord_order);
        }
        order
    }

    /// Whether the subtraction table was built.
    pub fn has_subtraction_table(&self) -> bool {
        self.sub_table.is_some()
    }

    /// The group spec string, e.g. `"2,6,6,6,6"` (or `"1"` when trivial).
    pub fn spec_string(&self) -> String {
        GroupSpec::new(self.orders.clone()).to_string()
    }
}

impl PartialEq for FiniteAbelianGroup {
    fn eq(&self, other: &Self) -> bool {
        self.orders == other.orders
    }
}

impl Eq for FiniteAbelianGroup {}

impl fmt::Debug for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteAbelianGroup")
            .field("orders", &self.orders)
            .field("size", &self.size)
            .field("tables", &self.sub_table.is_some())
            .finish()
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spec_string())
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

fn factorize_into(n: u64, out: &mut Vec<(u64, u64)>) {
    let mut n = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut q = 1u64;
            while n % p == 0 {
                n /= p;
                q *= p;
            }
            out.push((p, q));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, n));
    }
}

/// Recombines prime powers into the divisor chain: for every prime take its
/// powers in descending order; the k-th invariant factor (from the top) is
/// the product of every prime's k-th largest power.
fn invariant_factors_from_primary(primary: &[(u64, u64)]) -> Vec<u64> {
    use std::collections::BTreeMap;
    let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &(p, q) in primary {
        by_prime.entry(p).or_default().push(q);
    }
    let mut depth = 0usize;
    for powers in by_prime.values_mut() {
        powers.sort_unstable_by(|a, b| b.cmp(a));
        depth = depth.max(powers.len());
    }
    let mut chain = Vec::with_capacity(depth);
    for level in 0..depth {
        let mut factor = 1u64;
        for powers in by_prime.values() {
            if let Some(&q) = powers.get(level) {
                factor *= q;
            }
        }
        chain.push(factor);
    }
    chain.reverse();
    chain
}
