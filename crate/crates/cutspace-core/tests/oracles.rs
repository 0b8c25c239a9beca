//! Library results against definitional brute force on every poset with at
//! most four points. Nothing here calls the library to compute the answer.

use std::collections::BTreeSet;

use cutspace_core::continuity::{is_si2_continuous, is_si2_quasicontinuous};
use cutspace_core::enumerate::poset_rows;
use cutspace_core::si2::si2_opens;
use cutspace_core::space::{Topology, TopologySpec};
use cutspace_core::waybelow::waybelow_r;
use cutspace_core::{Carrier, DeltaConvention, FinitePoset, SetExpr, Space};

const CONVENTIONS: [DeltaConvention; 2] = [DeltaConvention::StandardCut, DeltaConvention::EmptyCut];

/// A poset as a relation matrix, and every definition in terms of it.
struct Rel {
    n: usize,
    le: Vec<Vec<bool>>,
}

impl Rel {
    fn of(p: &FinitePoset) -> Self {
        let n = p.len();
        Self { n, le: (0..n).map(|i| (0..n).map(|j| p.up(i) >> j & 1 == 1).collect()).collect() }
    }

    fn all(&self) -> u64 {
        (1 << self.n) - 1
    }

    fn has(s: u64, i: usize) -> bool {
        s >> i & 1 == 1
    }

    fn up(&self, a: u64) -> u64 {
        (0..self.n).filter(|&y| (0..self.n).any(|x| Self::has(a, x) && self.le[x][y])).fold(0, |m, y| m | 1 << y)
    }

    fn is_upper(&self, u: u64) -> bool {
        self.up(u) == u
    }

    fn cut(&self, a: u64, conv: DeltaConvention) -> u64 {
        let ub: Vec<usize> = (0..self.n).filter(|&y| (0..self.n).all(|x| !Self::has(a, x) || self.le[x][y])).collect();
        if ub.is_empty() && conv == DeltaConvention::EmptyCut {
            return 0;
        }
        (0..self.n).filter(|&x| ub.iter().all(|&y| self.le[x][y])).fold(0, |m, x| m | 1 << x)
    }

    fn alexandroff(&self) -> Vec<u64> {
        (0..=self.all()).filter(|&u| self.is_upper(u)).collect()
    }

    /// Opens generated by complements of principal down-sets.
    fn upper_topology(&self) -> Vec<u64> {
        let sub: Vec<u64> = (0..self.n)
            .map(|x| self.all() & !(0..self.n).filter(|&y| self.le[y][x]).fold(0, |m, y| m | 1 << y))
            .collect();
        let mut basis: BTreeSet<u64> = BTreeSet::from([self.all()]);
        for k in 0..1u32 << self.n {
            let meet = (0..self.n).filter(|&i| k >> i & 1 == 1).fold(self.all(), |m, i| m & sub[i]);
            basis.insert(meet);
        }
        let basis: Vec<u64> = basis.into_iter().collect();
        let mut opens = BTreeSet::new();
        for k in 0..1u64 << basis.len() {
            opens.insert((0..basis.len()).filter(|&i| k >> i & 1 == 1).fold(0, |m, i| m | basis[i]));
        }
        opens.into_iter().collect()
    }
}

/// Nonempty, and any two opens meeting `e` meet inside it.
fn irreducible(opens: &[u64], e: u64) -> bool {
    e != 0 && opens.iter().all(|&u| opens.iter().all(|&v| u & e == 0 || v & e == 0 || u & v & e != 0))
}

fn irreducibles(opens: &[u64], all: u64) -> Vec<u64> {
    (1..=all).filter(|&e| irreducible(opens, e)).collect()
}

/// `A ≪_r B`: every irreducible `E` whose cut meets `B` meets `↑A`.
fn waybelow_oracle(r: &Rel, irr: &[u64], conv: DeltaConvention, a: u64, b: u64) -> bool {
    irr.iter().all(|&e| r.cut(e, conv) & b == 0 || e & r.up(a) != 0)
}

fn posets(max_n: usize) -> impl Iterator<Item = FinitePoset> {
    (1..=max_n).flat_map(|n| poset_rows(n).unwrap()).map(|rows| FinitePoset::with_default_names(rows).unwrap())
}

#[test]
fn enumeration_matches_relation_filter() {
    for n in 1..=4 {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
        let mut expected = BTreeSet::new();
        for code in 0u32..1 << pairs.len() {
            let le = |i: usize, j: usize| i == j || pairs.iter().position(|&p| p == (i, j)).is_some_and(|k| code >> k & 1 == 1);
            let antisymmetric = (0..n).all(|i| (0..n).all(|j| i == j || !(le(i, j) && le(j, i))));
            let transitive = (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| !(le(i, j) && le(j, k)) || le(i, k))));
            if antisymmetric && transitive {
                let rows: Vec<u64> = (0..n).map(|i| (0..n).filter(|&j| le(i, j)).fold(0, |m, j| m | 1 << j)).collect();
                expected.insert(rows);
            }
        }
        let got: Vec<Vec<u64>> = poset_rows(n).unwrap();
        let got_set: BTreeSet<Vec<u64>> = got.iter().cloned().collect();
        assert_eq!(got.len(), got_set.len(), "duplicates at n = {n}");
        assert_eq!(got_set, expected, "n = {n}");
    }
}

#[test]
fn waybelow_matches_definition() {
    for p in posets(4) {
        let r = Rel::of(&p);
        for (topology, opens) in [
            (TopologySpec::Alexandroff, r.alexandroff()),
            (TopologySpec::Upper, r.upper_topology()),
        ] {
            let irr = irreducibles(&opens, r.all());
            for conv in CONVENTIONS {
                let s = Space::new(Carrier::Finite(p.clone()), Topology::Spec(topology.clone()), conv).unwrap();
                for a in 1..=r.all() {
                    for b in 1..=r.all() {
                        let got = waybelow_r(&s, &SetExpr::from_mask(a), &SetExpr::from_mask(b)).unwrap();
                        assert_eq!(
                            got,
                            waybelow_oracle(&r, &irr, conv, a, b),
                            "{:?} {topology:?} {conv:?} A = {a:#b} B = {b:#b}",
                            p.up_rows()
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn weakly_irreducible_opens_match_definition() {
    for p in posets(4) {
        let r = Rel::of(&p);
        let opens = r.alexandroff();
        let irr = irreducibles(&opens, r.all());
        for conv in CONVENTIONS {
            let expected: BTreeSet<u64> = opens
                .iter()
                .copied()
                .filter(|&u| irr.iter().all(|&e| r.cut(e, conv) & u == 0 || e & u != 0))
                .collect();
            let s = Space::alexandroff(Carrier::Finite(p.clone()), conv).unwrap();
            let got: BTreeSet<u64> = si2_opens(&s).unwrap().into_iter().collect();
            assert_eq!(got, expected, "{:?} {conv:?}", p.up_rows());
        }
    }
}

#[test]
fn upper_topology_on_finite_poset_is_alexandroff() {
    for p in posets(4) {
        let r = Rel::of(&p);
        assert_eq!(r.upper_topology(), r.alexandroff(), "{:?}", p.up_rows());
    }
}

#[test]
fn finite_spaces_are_quasicontinuous_and_continuous() {
    for p in posets(4) {
        for conv in CONVENTIONS {
            let s = Space::alexandroff(Carrier::Finite(p.clone()), conv).unwrap();
            assert!(is_si2_quasicontinuous(&s).unwrap().holds(), "{:?} {conv:?}", p.up_rows());
            assert!(is_si2_continuous(&s).unwrap().holds(), "{:?} {conv:?}", p.up_rows());
        }
    }
}

#[test]
fn waybelow_point_pairs_are_membership_in_up_set() {
    // On a finite space F ≪_r x exactly when x lies above a point of F.
    for p in posets(4) {
        let r = Rel::of(&p);
        let s = Space::alexandroff(Carrier::Finite(p.clone()), DeltaConvention::StandardCut).unwrap();
        for f in 1..=r.all() {
            for x in 0..r.n {
                let got = waybelow_r(&s, &SetExpr::from_mask(f), &SetExpr::from_mask(1 << x)).unwrap();
                assert_eq!(got, Rel::has(r.up(f), x));
            }
        }
    }
}
