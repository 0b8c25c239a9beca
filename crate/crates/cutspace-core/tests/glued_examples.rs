//! The glued carrier with `z < top`, `top` above the chain and `z` off it.

use cutspace_core::carrier::{Attachment, Carrier, ElementRef, OmegaPoset};
use cutspace_core::waybelow::{interpolate, interpolate_set, waybelow_r};
use cutspace_core::{DeltaConvention, Error, FinitePoset, SetExpr, Space};

const TOP: ElementRef = ElementRef::Named(0);
const Z: ElementRef = ElementRef::Named(1);

fn topz(conv: DeltaConvention) -> Space {
    let w = OmegaPoset::new(vec!["top".into(), "z".into()], &[(1, 0)], vec![Attachment::AboveAll, Attachment::Incomparable])
        .unwrap();
    Space::alexandroff(Carrier::OmegaGlued(w), conv).unwrap()
}

fn z_and(n: usize) -> SetExpr {
    SetExpr::points([Z, ElementRef::Indexed(n)])
}

#[test]
fn z_with_any_chain_point_is_way_below_z() {
    let s = topz(DeltaConvention::StandardCut);
    for n in 0..20 {
        assert!(waybelow_r(&s, &z_and(n), &SetExpr::point(Z)).unwrap(), "n = {n}");
    }
    assert!(!waybelow_r(&s, &SetExpr::point(Z), &SetExpr::point(Z)).unwrap());
    // The chain's cut contains top while the chain misses ↑top.
    assert!(!waybelow_r(&s, &SetExpr::point(TOP), &SetExpr::point(TOP)).unwrap());
}

#[test]
fn interpolation_on_the_glued_example() {
    let s = topz(DeltaConvention::StandardCut);
    let f = z_and(0);
    let g = interpolate(&s, &f, Z).unwrap();
    assert!(waybelow_r(&s, &f, &g).unwrap());
    assert!(waybelow_r(&s, &g, &SetExpr::point(Z)).unwrap());
    // Smallest first: nothing with fewer points interpolates.
    assert_eq!(g, z_and(0));
    let h = SetExpr::points([Z, TOP]);
    let g = interpolate_set(&s, &f, &h).unwrap();
    assert!(waybelow_r(&s, &f, &g).unwrap() && waybelow_r(&s, &g, &h).unwrap());
}

#[test]
fn interpolation_rejects_non_waybelow_pairs() {
    let s = topz(DeltaConvention::StandardCut);
    assert!(matches!(interpolate(&s, &SetExpr::point(Z), Z), Err(Error::NotApplicable(_))));
}

#[test]
fn finite_interpolation_is_the_point_itself() {
    let p = FinitePoset::new(vec!["a".into(), "b".into(), "c".into()], &[(0, 1), (0, 2)]).unwrap();
    let s = Space::alexandroff(Carrier::Finite(p), DeltaConvention::StandardCut).unwrap();
    for x in 0..3 {
        let x = ElementRef::Named(x);
        assert_eq!(interpolate(&s, &SetExpr::point(x), x).unwrap(), SetExpr::point(x));
    }
}
