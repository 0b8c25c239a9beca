//! Finitely presented subsets of a carrier.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::carrier::{Carrier, ElementRef};
use crate::error::{Error, Result};
use crate::finite::{bits, full_mask, Mask};

/// A subset `named ∪ {indexed} ∪ {i : i >= tail}`.
///
/// Cofinite subsets of the countable antichain use the same encoding: the
/// complement of a finite `K` is `[0, max K] \ K` plus a tail. Values are kept
/// canonical (no explicit index at or beyond the tail, and the tail start is
/// as small as possible), so structural equality is set equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetExpr {
    named: Mask,
    indexed: BTreeSet<usize>,
    tail: Option<usize>,
}

impl SetExpr {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_mask(named: Mask) -> Self {
        Self { named, ..Self::default() }
    }

    pub fn from_parts(named: Mask, indexed: impl IntoIterator<Item = usize>, tail: Option<usize>) -> Self {
        let mut s = Self { named, indexed: indexed.into_iter().collect(), tail };
        s.canonicalize();
        s
    }

    pub fn point(x: ElementRef) -> Self {
        Self::points([x])
    }

    pub fn points(xs: impl IntoIterator<Item = ElementRef>) -> Self {
        let mut s = Self::default();
        for x in xs {
            match x {
                ElementRef::Named(i) => s.named |= 1 << i,
                ElementRef::Indexed(i) => {
                    s.indexed.insert(i);
                }
            }
        }
        s.canonicalize();
        s
    }

    /// All indices from `k` on.
    pub fn tail_from(k: usize) -> Self {
        Self { tail: Some(k), ..Self::default() }
    }

    /// All indexed points except those in `excluded`.
    pub fn cofinite(excluded: impl IntoIterator<Item = usize>) -> Self {
        let ex: BTreeSet<usize> = excluded.into_iter().collect();
        let t = ex.iter().next_back().map_or(0, |m| m + 1);
        Self::from_parts(0, (0..t).filter(|i| !ex.contains(i)), Some(t))
    }

    /// Every point of `carrier`.
    pub fn whole(carrier: &Carrier) -> Self {
        let tail = carrier.has_indexed().then_some(0);
        Self { named: full_mask(carrier.named_len()), indexed: BTreeSet::new(), tail }
    }

    fn canonicalize(&mut self) {
        if let Some(mut t) = self.tail {
            self.indexed.retain(|&i| i < t);
            while t > 0 && self.indexed.remove(&(t - 1)) {
                t -= 1;
            }
            self.tail = Some(t);
        }
    }

    pub fn named_mask(&self) -> Mask {
        self.named
    }

    pub fn indexed(&self) -> &BTreeSet<usize> {
        &self.indexed
    }

    pub fn tail(&self) -> Option<usize> {
        self.tail
    }

    /// Indices missing from a set with a tail.
    pub fn excluded_indices(&self) -> Option<Vec<usize>> {
        self.tail.map(|t| (0..t).filter(|i| !self.indexed.contains(i)).collect())
    }

    pub fn contains(&self, x: ElementRef) -> bool {
        match x {
            ElementRef::Named(i) => i < 64 && self.named >> i & 1 == 1,
            ElementRef::Indexed(i) => self.contains_index(i),
        }
    }

    pub fn contains_index(&self, i: usize) -> bool {
        self.indexed.contains(&i) || self.tail.is_some_and(|t| i >= t)
    }

    pub fn is_empty(&self) -> bool {
        self.named == 0 && self.indexed.is_empty() && self.tail.is_none()
    }

    pub fn is_finite(&self) -> bool {
        self.tail.is_none()
    }

    /// Cardinality of a finite set.
    pub fn len(&self) -> Option<usize> {
        self.is_finite().then(|| self.named.count_ones() as usize + self.indexed.len())
    }

    /// Whether the set meets the indexed points in an infinite set.
    pub fn has_tail(&self) -> bool {
        self.tail.is_some()
    }

    /// Points of a finite set, named points first.
    pub fn finite_points(&self) -> Option<Vec<ElementRef>> {
        self.is_finite().then(|| self.points_upto(0))
    }

    /// Named points, explicit indices, and tail indices up to `limit` inclusive.
    pub fn points_upto(&self, limit: usize) -> Vec<ElementRef> {
        let mut out: Vec<ElementRef> = bits(self.named).map(ElementRef::Named).collect();
        out.extend(self.indexed.iter().map(|&i| ElementRef::Indexed(i)));
        if let Some(t) = self.tail {
            out.extend((t..=limit.max(t)).map(ElementRef::Indexed));
        }
        out
    }

    /// One more than the largest index the expression mentions.
    pub fn param_bound(&self) -> usize {
        let i = self.indexed.iter().next_back().map_or(0, |m| m + 1);
        let t = self.tail.map_or(0, |t| t + 1);
        i.max(t)
    }

    fn combine(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Self {
        let named = (0..64)
            .filter(|&i| op(self.named >> i & 1 == 1, other.named >> i & 1 == 1))
            .fold(0, |acc, i| acc | 1 << i);
        let bound = self.param_bound().max(other.param_bound());
        let indexed: Vec<usize> = (0..bound)
            .filter(|&i| op(self.contains_index(i), other.contains_index(i)))
            .collect();
        let tail = op(self.tail.is_some(), other.tail.is_some()).then_some(bound);
        Self::from_parts(named, indexed, tail)
    }

    pub fn union(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a && !b)
    }

    /// Complement within `carrier`.
    pub fn complement(&self, carrier: &Carrier) -> Self {
        SetExpr::whole(carrier).difference(self)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }

    pub fn meets(&self, other: &Self) -> bool {
        !self.intersection(other).is_empty()
    }

    pub fn insert(&mut self, x: ElementRef) {
        *self = self.union(&SetExpr::point(x));
    }

    /// Rejects fields the carrier does not have.
    pub fn validate(&self, carrier: &Carrier) -> Result<()> {
        if self.named & !full_mask(carrier.named_len()) != 0 {
            return Err(Error::InvalidSet(String::from("named point out of range")));
        }
        if !carrier.has_indexed() && (!self.indexed.is_empty() || self.tail.is_some()) {
            return Err(Error::InvalidSet(String::from(
                "indexed points on a carrier without a chain",
            )));
        }
        Ok(())
    }

    pub fn display<'a>(&'a self, carrier: &'a Carrier) -> SetDisplay<'a> {
        SetDisplay { set: self, carrier }
    }
}

/// Renders `{a, b, @3, @7..}`.
pub struct SetDisplay<'a> {
    set: &'a SetExpr,
    carrier: &'a Carrier,
}

impl fmt::Display for SetDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = bits(self.set.named)
            .map(|i| format!("{}", self.carrier.display(ElementRef::Named(i))))
            .collect();
        parts.extend(self.set.indexed.iter().map(|i| format!("@{i}")));
        if let Some(t) = self.set.tail {
            parts.push(format!("@{t}.."));
        }
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn tail_absorbs_adjacent_indices() {
        let s = SetExpr::from_parts(0, [1, 3, 4], Some(5));
        assert_eq!(s.tail(), Some(3));
        assert_eq!(s.indexed().iter().copied().collect::<Vec<_>>(), alloc::vec![1]);
    }

    #[test]
    fn cofinite_complement_of_finite() {
        let c = SetExpr::cofinite([0, 2]);
        assert!(!c.contains_index(0));
        assert!(c.contains_index(1));
        assert!(!c.contains_index(2));
        assert!(c.contains_index(100));
        assert_eq!(c.excluded_indices(), Some(alloc::vec![0, 2]));
        assert_eq!(SetExpr::cofinite([]), SetExpr::tail_from(0));
    }

    #[test]
    fn complement_round_trip() {
        let carrier = Carrier::CountableAntichain;
        let s = SetExpr::points([ElementRef::Indexed(2), ElementRef::Indexed(5)]);
        assert_eq!(s.complement(&carrier), SetExpr::cofinite([2, 5]));
        assert_eq!(s.complement(&carrier).complement(&carrier), s);
    }

    fn arb_set() -> impl Strategy<Value = SetExpr> {
        (0u64..16, proptest::collection::btree_set(0usize..8, 0..5), proptest::option::of(0usize..9))
            .prop_map(|(m, idx, t)| SetExpr::from_parts(m, idx, t))
    }

    proptest! {
        #[test]
        fn boolean_ops_agree_with_membership(a in arb_set(), b in arb_set()) {
            let u = a.union(&b);
            let i = a.intersection(&b);
            let d = a.difference(&b);
            for k in 0..20 {
                let (x, y) = (a.contains_index(k), b.contains_index(k));
                prop_assert_eq!(u.contains_index(k), x || y);
                prop_assert_eq!(i.contains_index(k), x && y);
                prop_assert_eq!(d.contains_index(k), x && !y);
            }
            prop_assert_eq!(u.named_mask(), a.named_mask() | b.named_mask());
            prop_assert_eq!(i.named_mask(), a.named_mask() & b.named_mask());
        }

        #[test]
        fn canonical_forms_are_unique(a in arb_set(), b in arb_set()) {
            let same = (0..20).all(|k| a.contains_index(k) == b.contains_index(k))
                && a.named_mask() == b.named_mask();
            prop_assert_eq!(same, a == b);
        }
    }
}
