//! Finite posets over bitmask point sets.
//!
//! Points are indexed `0..n` with `n <= 64`; a subset is a [`Mask`] whose bit
//! `i` marks point `i`. Every exhaustive procedure in the crate bottoms out
//! here.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::order::DeltaConvention;

/// A subset of a finite carrier, one bit per point.
pub type Mask = u64;

/// Largest carrier representable by a [`Mask`].
pub const MAX_POINTS: usize = 64;

/// Mask with the lowest `n` bits set.
pub fn full_mask(n: usize) -> Mask {
    if n >= 64 {
        Mask::MAX
    } else {
        (1 << n) - 1
    }
}

/// Iterates the indices of set bits in increasing order.
pub fn bits(mut m: Mask) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

/// Iterates all nonempty submasks of `m`, ordered by cardinality and then by
/// the lexicographic order of their sorted index lists.
pub fn submasks_by_size(m: Mask) -> Vec<Mask> {
    let idx: Vec<usize> = bits(m).collect();
    let k = idx.len();
    let mut out: Vec<Mask> = Vec::with_capacity((1usize << k).saturating_sub(1));
    for sel in 1u64..(1u64 << k) {
        let mut s = 0;
        for (j, &i) in idx.iter().enumerate() {
            if sel >> j & 1 == 1 {
                s |= 1 << i;
            }
        }
        out.push(s);
    }
    out.sort_by(|a, b| {
        a.count_ones()
            .cmp(&b.count_ones())
            .then_with(|| bits(*a).cmp(bits(*b)))
    });
    out
}

/// A finite partial order, stored as its principal up- and down-sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinitePoset {
    names: Vec<String>,
    up: Vec<Mask>,
    down: Vec<Mask>,
}

impl FinitePoset {
    /// Builds the reflexive-transitive closure of `pairs` (`(a, b)` meaning
    /// `a <= b`) and rejects cycles.
    pub fn new(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        check_names(&names)?;
        let mut up: Vec<Mask> = (0..n).map(|i| 1 << i).collect();
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::UnknownElement(format!("index {}", a.max(b))));
            }
            up[a] |= 1 << b;
        }
        close_transitively(&mut up);
        Self::from_up_sets(names, up)
    }

    /// Accepts already-closed principal up-sets and validates the partial
    /// order axioms.
    pub fn from_up_sets(names: Vec<String>, up: Vec<Mask>) -> Result<Self> {
        let n = names.len();
        check_names(&names)?;
        if up.len() != n {
            return Err(Error::NotPartialOrder(String::from("row count mismatch")));
        }
        let full = full_mask(n);
        for i in 0..n {
            if up[i] & !full != 0 {
                return Err(Error::NotPartialOrder(format!("row {i} out of range")));
            }
            if up[i] >> i & 1 == 0 {
                return Err(Error::NotPartialOrder(format!("`{}` is not reflexive", names[i])));
            }
            for j in bits(up[i]) {
                if up[j] & !up[i] != 0 {
                    return Err(Error::NotPartialOrder(format!(
                        "`{}` <= `{}` is not transitively closed",
                        names[i], names[j]
                    )));
                }
                if j != i && up[j] >> i & 1 == 1 {
                    return Err(Error::NotPartialOrder(format!(
                        "antisymmetry fails for `{}` and `{}`",
                        names[i], names[j]
                    )));
                }
            }
        }
        let mut down = alloc::vec![0; n];
        for i in 0..n {
            for j in bits(up[i]) {
                down[j] |= 1 << i;
            }
        }
        Ok(Self { names, up, down })
    }

    /// Poset on `p0, p1, ...` from closed up-set rows.
    pub fn with_default_names(up: Vec<Mask>) -> Result<Self> {
        let names = (0..up.len()).map(|i| format!("p{i}")).collect();
        Self::from_up_sets(names, up)
    }

    pub fn antichain(names: Vec<String>) -> Result<Self> {
        Self::new(names, &[])
    }

    pub fn chain(names: Vec<String>) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = (1..names.len()).map(|i| (i - 1, i)).collect();
        Self::new(names, &pairs)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn full(&self) -> Mask {
        full_mask(self.len())
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i] >> j & 1 == 1
    }

    /// Principal up-set of point `i`.
    pub fn up(&self, i: usize) -> Mask {
        self.up[i]
    }

    /// Principal down-set of point `i`.
    pub fn down(&self, i: usize) -> Mask {
        self.down[i]
    }

    pub fn up_rows(&self) -> &[Mask] {
        &self.up
    }

    pub fn up_closure(&self, a: Mask) -> Mask {
        bits(a).fold(0, |acc, i| acc | self.up[i])
    }

    pub fn down_closure(&self, a: Mask) -> Mask {
        bits(a).fold(0, |acc, i| acc | self.down[i])
    }

    pub fn is_upper(&self, a: Mask) -> bool {
        self.up_closure(a) == a
    }

    pub fn is_lower(&self, a: Mask) -> bool {
        self.down_closure(a) == a
    }

    /// `A^↑`; the empty set is bounded by everything.
    pub fn upper_bounds(&self, a: Mask) -> Mask {
        bits(a).fold(self.full(), |acc, i| acc & self.up[i])
    }

    /// `A^↓`; the empty set is bounded by everything.
    pub fn lower_bounds(&self, a: Mask) -> Mask {
        bits(a).fold(self.full(), |acc, i| acc & self.down[i])
    }

    /// `A^δ = (A^↑)^↓` under the given convention for unbounded sets.
    pub fn cut(&self, a: Mask, convention: DeltaConvention) -> Mask {
        let ub = self.upper_bounds(a);
        if ub == 0 && convention == DeltaConvention::EmptyCut {
            0
        } else {
            self.lower_bounds(ub)
        }
    }

    /// Nonempty, and every pair has an upper bound inside the set.
    pub fn is_directed(&self, a: Mask) -> bool {
        if a == 0 {
            return false;
        }
        bits(a).all(|i| bits(a).all(|j| self.up[i] & self.up[j] & a != 0))
    }

    /// Greatest element of `a`, if any.
    pub fn greatest(&self, a: Mask) -> Option<usize> {
        bits(a).find(|&i| a & !self.down[i] == 0)
    }

    /// Least element of `a`, if any.
    pub fn least(&self, a: Mask) -> Option<usize> {
        bits(a).find(|&i| a & !self.up[i] == 0)
    }

    /// Maximal elements of `a`.
    pub fn maximal(&self, a: Mask) -> Mask {
        bits(a)
            .filter(|&i| self.up[i] & a == 1 << i)
            .fold(0, |acc, i| acc | 1 << i)
    }

    /// Least upper bound of `a`, when it exists.
    pub fn join(&self, a: Mask) -> Option<usize> {
        self.least(self.upper_bounds(a))
    }

    /// Greatest lower bound of `a`, when it exists.
    pub fn meet(&self, a: Mask) -> Option<usize> {
        self.greatest(self.lower_bounds(a))
    }

    /// Covering pairs `(a, b)` with `a < b` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            let strict = self.up[i] & !(1 << i);
            for j in bits(strict) {
                let between = strict & self.down[j] & !(1 << j);
                if between == 0 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Restriction to the points of `keep`, renumbered in increasing order.
    pub fn restrict(&self, keep: Mask) -> FinitePoset {
        let idx: Vec<usize> = bits(keep).collect();
        let names = idx.iter().map(|&i| self.names[i].clone()).collect();
        let up = idx
            .iter()
            .map(|&i| {
                idx.iter()
                    .enumerate()
                    .filter(|&(_, &j)| self.leq(i, j))
                    .fold(0, |acc, (k, _)| acc | 1 << k)
            })
            .collect();
        FinitePoset::from_up_sets(names, up).expect("restriction of a poset is a poset")
    }
}

fn check_names(names: &[String]) -> Result<()> {
    if names.len() > MAX_POINTS {
        return Err(Error::TooLarge { size: names.len(), limit: MAX_POINTS });
    }
    for (i, n) in names.iter().enumerate() {
        if names[..i].contains(n) {
            return Err(Error::NotPartialOrder(format!("duplicate element `{n}`")));
        }
    }
    Ok(())
}

/// Warshall closure on up-set rows.
pub(crate) fn close_transitively(up: &mut [Mask]) {
    let n = up.len();
    for k in 0..n {
        for i in 0..n {
            if up[i] >> k & 1 == 1 {
                up[i] |= up[k];
            }
        }
    }
}
