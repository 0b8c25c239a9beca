//! Finite lattices and hypercontinuity.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::finite::{bits, FinitePoset, Mask};

/// A finite poset in which every pair has a join and a meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    order: FinitePoset,
}

impl FiniteLattice {
    pub fn new(order: FinitePoset) -> Result<Self> {
        let n = order.len();
        if n == 0 {
            return Err(Error::NotLattice(String::from("empty poset")));
        }
        for a in 0..n {
            for b in a + 1..n {
                let pair = 1 << a | 1 << b;
                if order.join(pair).is_none() {
                    return Err(Error::NotLattice(format!(
                        "`{}` and `{}` have no join",
                        order.name(a),
                        order.name(b)
                    )));
                }
                if order.meet(pair).is_none() {
                    return Err(Error::NotLattice(format!(
                        "`{}` and `{}` have no meet",
                        order.name(a),
                        order.name(b)
                    )));
                }
            }
        }
        Ok(Self { order })
    }

    pub fn order(&self) -> &FinitePoset {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn bottom(&self) -> usize {
        self.order.least(self.order.full()).expect("finite lattices have a bottom")
    }

    pub fn top(&self) -> usize {
        self.order.greatest(self.order.full()).expect("finite lattices have a top")
    }

    /// Join of an arbitrary subset; the empty join is the bottom.
    pub fn join(&self, s: Mask) -> usize {
        self.order.join(s).expect("finite lattices are complete")
    }

    pub fn meet(&self, s: Mask) -> usize {
        self.order.meet(s).expect("finite lattices are complete")
    }

    /// Smallest upper-topology open set containing `y`: the complement of
    /// `↓(L \ ↑y)`.
    pub fn upper_nbhd(&self, y: usize) -> Mask {
        let p = &self.order;
        let outside = p.full() & !p.up(y);
        p.full() & !p.down_closure(outside)
    }

    /// Interior of `a` in the upper topology.
    pub fn upper_interior(&self, a: Mask) -> Mask {
        bits(a).filter(|&y| self.upper_nbhd(y) & !a == 0).fold(0, |m, y| m | 1 << y)
    }
}

/// `x ≺ y`: `y` lies in the upper-topology interior of `↑x`.
pub fn hyper_prec(l: &FiniteLattice, x: usize, y: usize) -> bool {
    l.upper_interior(l.order().up(x)) >> y & 1 == 1
}

/// Every `x` is the join of `{u : u ≺ x}`.
pub fn is_hypercontinuous(l: &FiniteLattice) -> bool {
    (0..l.len()).all(|x| {
        let below: Mask = (0..l.len()).filter(|&u| hyper_prec(l, u, x)).fold(0, |m, u| m | 1 << u);
        l.join(below) == x
    })
}

/// The lattice of a family of sets closed under union and intersection,
/// ordered by inclusion. Elements keep the order of `sets`.
pub fn inclusion_lattice(sets: &[Mask]) -> Result<FiniteLattice> {
    if sets.len() > crate::finite::MAX_POINTS {
        return Err(Error::TooLarge { size: sets.len(), limit: crate::finite::MAX_POINTS });
    }
    let names = (0..sets.len()).map(|i| format!("U{i}")).collect();
    let up: Vec<Mask> = sets
        .iter()
        .map(|&a| {
            sets.iter()
                .enumerate()
                .filter(|&(_, &b)| a & !b == 0)
                .fold(0, |m, (j, _)| m | 1 << j)
        })
        .collect();
    FiniteLattice::new(FinitePoset::from_up_sets(names, up)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::{String, ToString};

    fn names(s: &[&str]) -> Vec<String> {
        s.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn two_chain() {
        let l = FiniteLattice::new(FinitePoset::chain(names(&["0", "1"])).unwrap()).unwrap();
        assert!(hyper_prec(&l, 0, 1));
        assert!(!hyper_prec(&l, 1, 0));
        assert!(is_hypercontinuous(&l));
    }

    #[test]
    fn singleton_lattice() {
        let l = FiniteLattice::new(FinitePoset::chain(names(&["0"])).unwrap()).unwrap();
        assert!(is_hypercontinuous(&l));
        assert_eq!(l.bottom(), l.top());
    }

    #[test]
    fn vee_is_not_a_lattice() {
        let p = FinitePoset::new(names(&["b", "x", "y"]), &[(0, 1), (0, 2)]).unwrap();
        assert!(matches!(FiniteLattice::new(p), Err(Error::NotLattice(_))));
    }

    #[test]
    fn discrete_two_point_opens_form_a_diamond() {
        let l = inclusion_lattice(&[0b00, 0b01, 0b10, 0b11]).unwrap();
        assert_eq!(l.bottom(), 0);
        assert_eq!(l.top(), 3);
        assert_eq!(l.join(0b0110), 3);
        assert_eq!(l.meet(0b0110), 0);
        assert!(is_hypercontinuous(&l));
    }
}
