use cutspace_core::carrier::{Attachment, Carrier, ElementRef, OmegaPoset};
use cutspace_core::order::{self, rudin_witness, truncate, truncate_set, DeltaConvention};
use cutspace_core::space::{self, Topology, TopologySpec};
use cutspace_core::waybelow::{uu_r, waybelow_r};
use cutspace_core::{Error, FinitePoset, Mask, SetExpr, Space};
use proptest::prelude::*;

const CONVENTIONS: [DeltaConvention; 2] = [DeltaConvention::StandardCut, DeltaConvention::EmptyCut];

/// A random partial order: a random DAG on shuffled labels, closed.
fn poset() -> impl Strategy<Value = FinitePoset> {
    (1usize..=6).prop_flat_map(|n| {
        let edges = proptest::collection::vec(any::<bool>(), n * (n - 1) / 2);
        let perm = Just((0..n).collect::<Vec<_>>()).prop_shuffle();
        (Just(n), edges, perm).prop_map(|(n, edges, perm)| {
            let mut pairs = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if edges[k] {
                        pairs.push((perm[i], perm[j]));
                    }
                    k += 1;
                }
            }
            FinitePoset::new((0..n).map(|i| format!("p{i}")).collect(), &pairs).unwrap()
        })
    })
}

fn subset(p: &FinitePoset, raw: Mask) -> Mask {
    raw & p.full()
}

fn nonempty(p: &FinitePoset, raw: Mask) -> Mask {
    let m = subset(p, raw);
    if m == 0 {
        1
    } else {
        m
    }
}

fn alexandroff(p: &FinitePoset, conv: DeltaConvention) -> Space {
    Space::alexandroff(Carrier::Finite(p.clone()), conv).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn up_closure_is_a_closure(p in poset(), a in any::<Mask>(), b in any::<Mask>()) {
        let (a, b) = (subset(&p, a), subset(&p, b));
        let up = p.up_closure(a);
        prop_assert_eq!(up & a, a);
        prop_assert_eq!(p.up_closure(up), up);
        prop_assert!(p.is_upper(up));
        prop_assert_eq!(p.up_closure(a | b), up | p.up_closure(b));
        let down = p.down_closure(a);
        prop_assert!(p.is_lower(down));
        prop_assert_eq!(down & a, a);
    }

    #[test]
    fn cut_laws(p in poset(), a in any::<Mask>(), b in any::<Mask>()) {
        let a = subset(&p, a);
        let b = subset(&p, b) | a;
        let carrier = Carrier::Finite(p.clone());
        for conv in CONVENTIONS {
            let ca = p.cut(a, conv);
            prop_assert!(p.is_lower(ca));
            prop_assert_eq!(order::cut(&carrier, &SetExpr::from_mask(a), conv).unwrap(), SetExpr::from_mask(ca));
            if p.upper_bounds(b) != 0 {
                // Bounded sets: extensive, idempotent, monotone.
                prop_assert_eq!(ca & a, a);
                prop_assert_eq!(p.cut(ca, conv), ca);
                prop_assert_eq!(ca & !p.cut(b, conv), 0);
            } else {
                prop_assert_eq!(p.cut(b, conv), if conv == DeltaConvention::StandardCut { p.full() } else { 0 });
            }
        }
    }

    #[test]
    fn directed_sets_are_irreducible(p in poset(), d in any::<Mask>()) {
        let d = subset(&p, d);
        prop_assume!(p.is_directed(d));
        for spec in [TopologySpec::Alexandroff, TopologySpec::Upper] {
            let s = Space::new(Carrier::Finite(p.clone()), Topology::Spec(spec), DeltaConvention::StandardCut).unwrap();
            prop_assert!(s.finite().unwrap().is_irreducible(d));
            prop_assert!(space::is_irreducible(&s, &SetExpr::from_mask(d)).unwrap());
        }
    }

    #[test]
    fn waybelow_needs_up_inclusion_and_is_monotone(p in poset(), a in any::<Mask>(), b in any::<Mask>(), extra in any::<Mask>()) {
        let (a, b) = (nonempty(&p, a), nonempty(&p, b));
        let extra = subset(&p, extra);
        for conv in CONVENTIONS {
            let s = alexandroff(&p, conv);
            let wb = |x: Mask, y: Mask| waybelow_r(&s, &SetExpr::from_mask(x), &SetExpr::from_mask(y)).unwrap();
            if wb(a, b) {
                prop_assert_eq!(b & !p.up_closure(a), 0);
                prop_assert!(wb(a | extra, b));
                let smaller = b & !extra;
                if smaller != 0 {
                    prop_assert!(wb(a, smaller));
                }
            }
        }
    }

    #[test]
    fn way_above_sets_are_open(p in poset(), h in any::<Mask>()) {
        let h = nonempty(&p, h);
        for conv in CONVENTIONS {
            let s = alexandroff(&p, conv);
            let uu = uu_r(&s, &SetExpr::from_mask(h)).unwrap();
            prop_assert!(space::is_open(&s, &uu).unwrap());
            prop_assert_eq!(uu.named_mask() & !p.up_closure(h), 0);
        }
    }

    #[test]
    fn rudin_witness_is_valid(p in poset(), raw in proptest::collection::vec(any::<Mask>(), 1..4)) {
        let fam: Vec<Mask> = raw.iter().map(|&m| nonempty(&p, m)).collect();
        let sets: Vec<SetExpr> = fam.iter().map(|&m| SetExpr::from_mask(m)).collect();
        let carrier = Carrier::Finite(p.clone());
        match rudin_witness(&carrier, &sets) {
            Ok(d) => {
                let d = d.named_mask();
                let union = fam.iter().fold(0, |u, &f| u | f);
                prop_assert!(order::is_directed_mask_family(&p, &fam));
                prop_assert!(p.is_directed(d));
                prop_assert_eq!(d & !union, 0);
                prop_assert!(fam.iter().all(|&f| f & d != 0));
            }
            Err(e) => {
                prop_assert_eq!(e, Error::NotDirectedFamily);
                prop_assert!(!order::is_directed_mask_family(&p, &fam));
            }
        }
    }
}

/// A subset of the countable antichain with a possible tail.
fn indexed_set() -> impl Strategy<Value = SetExpr> {
    (proptest::collection::btree_set(0usize..12, 0..6), proptest::option::of(0usize..12))
        .prop_map(|(idx, tail)| SetExpr::from_parts(0, idx, tail))
}

fn member(s: &SetExpr, i: usize) -> bool {
    s.contains(ElementRef::Indexed(i))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn set_algebra_with_tails(a in indexed_set(), b in indexed_set()) {
        let all = Carrier::CountableAntichain;
        let (u, i, d) = (a.union(&b), a.intersection(&b), a.difference(&b));
        for k in 0..40 {
            prop_assert_eq!(member(&u, k), member(&a, k) || member(&b, k));
            prop_assert_eq!(member(&i, k), member(&a, k) && member(&b, k));
            prop_assert_eq!(member(&d, k), member(&a, k) && !member(&b, k));
            prop_assert_eq!(member(&a.complement(&all), k), !member(&a, k));
        }
        // Canonical forms make structural equality set equality.
        prop_assert_eq!(&u, &b.union(&a));
        prop_assert_eq!(a.complement(&all).complement(&all), a.clone());
        prop_assert_eq!(u.complement(&all), a.complement(&all).intersection(&b.complement(&all)));
        prop_assert_eq!(a.is_subset(&b), d.is_empty());
        prop_assert_eq!(a.has_tail() && b.has_tail(), i.has_tail());
    }
}

fn attachment() -> impl Strategy<Value = Attachment> {
    prop_oneof![
        Just(Attachment::AboveAll),
        (0usize..3).prop_map(Attachment::AbovePrefix),
        (0usize..3).prop_map(Attachment::BelowIndex),
        Just(Attachment::Incomparable),
    ]
}

/// A glued carrier with up to three named points; inconsistent draws are
/// rejected by the constructor and skipped.
fn glued() -> impl Strategy<Value = Option<Carrier>> {
    (1usize..=3).prop_flat_map(|n| {
        (proptest::collection::vec(any::<bool>(), n * (n - 1) / 2), proptest::collection::vec(attachment(), n)).prop_map(
            move |(edges, att)| {
                let pairs: Vec<(usize, usize)> =
                    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).zip(edges).filter(|&(_, e)| e).map(|(p, _)| p).collect();
                let names = (0..n).map(|i| format!("p{i}")).collect();
                OmegaPoset::new(names, &pairs, att).ok().map(Carrier::OmegaGlued)
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn truncations_agree_with_the_glued_order(c in glued(), extra in 1usize..4, raw in any::<Mask>(), chain in any::<Mask>()) {
        let c = match c {
            Some(c) => c,
            None => return Ok(()),
        };
        let n = c.param_bound() + extra;
        let t = truncate(&c, n).unwrap();
        let nf = c.named_len();
        let pts: Vec<ElementRef> = (0..nf).map(ElementRef::Named).chain((0..n).map(ElementRef::Indexed)).collect();
        for (i, &x) in pts.iter().enumerate() {
            for (j, &y) in pts.iter().enumerate() {
                prop_assert_eq!(order::leq(&c, x, y).unwrap(), t.leq(i, j));
            }
        }
        // Finite sets below the last chain point close the same way.
        let a = SetExpr::from_parts(raw & ((1 << nf) - 1), (0..n - 1).filter(|&i| chain >> i & 1 == 1), None);
        let up = order::up_closure(&c, &a).unwrap();
        prop_assert_eq!(truncate_set(&c, &up, n), t.up_closure(truncate_set(&c, &a, n)));
        let down = order::down_closure(&c, &a).unwrap();
        prop_assert_eq!(truncate_set(&c, &down, n), t.down_closure(truncate_set(&c, &a, n)));
        if !a.is_empty() {
            prop_assert_eq!(order::is_directed(&c, &a).unwrap(), t.is_directed(truncate_set(&c, &a, n)));
        }
    }
}
