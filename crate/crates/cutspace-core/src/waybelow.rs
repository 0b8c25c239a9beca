//! The way-below relations ≪ (directed sets), ≪_SI and ≪_r (irreducible sets),
//! the sets ⇑_r and ⇓_r, the families w(x), and interpolation.
//!
//! Set forms are read with the up-closure of the left argument: `A ≪_r B`
//! when every irreducible `E` whose cut meets `B` meets `↑A`. With
//! `bad(U) = ∪{E^δ : E irreducible, E ∩ U = ∅}` this is `B ∩ bad(↑A) = ∅`,
//! which is how everything below is computed.

use alloc::string::String;
use alloc::vec::Vec;

use crate::carrier::{Carrier, ElementRef};
use crate::error::{Error, Result};
use crate::finite::{bits, submasks_by_size, Mask};
use crate::order::{self, DeltaConvention};
use crate::setexpr::SetExpr;
use crate::space::{self, Space};

/// One past every chain index mentioned by the carrier or the arguments.
/// Chain points at or beyond it are interchangeable.
pub(crate) fn horizon(carrier: &Carrier, sets: &[&SetExpr]) -> usize {
    sets.iter()
        .map(|s| s.param_bound())
        .chain([carrier.param_bound()])
        .max()
        .unwrap_or(0)
        + 1
}

/// The points of `s` satisfying `keep`, deciding chain points beyond
/// `horizon` by the representative `c_horizon`.
pub(crate) fn filter_points(
    s: &SetExpr,
    horizon: usize,
    mut keep: impl FnMut(ElementRef) -> Result<bool>,
) -> Result<SetExpr> {
    let mut named: Mask = 0;
    for f in bits(s.named_mask()) {
        if keep(ElementRef::Named(f))? {
            named |= 1 << f;
        }
    }
    let mut idx = Vec::new();
    for &i in s.indexed() {
        if keep(ElementRef::Indexed(i))? {
            idx.push(i);
        }
    }
    let mut tail = None;
    if let Some(t) = s.tail() {
        let rep = t.max(horizon);
        for i in t..rep {
            if keep(ElementRef::Indexed(i))? {
                idx.push(i);
            }
        }
        if keep(ElementRef::Indexed(rep))? {
            tail = Some(rep);
        }
    }
    Ok(SetExpr::from_parts(named, idx, tail))
}

fn require_finite_nonempty(a: &SetExpr) -> Result<()> {
    if a.is_empty() {
        Err(Error::EmptySet)
    } else if !a.is_finite() {
        Err(Error::InvalidSet(String::from("argument must be finite")))
    } else {
        Ok(())
    }
}

/// Union of the cuts of irreducible sets missing the upper set `u`.
pub fn bad(space: &Space, u: &SetExpr) -> Result<SetExpr> {
    if let Some(fs) = space.finite() {
        return Ok(SetExpr::from_mask(fs.bad(u.named_mask())));
    }
    let classes = space::irreducible_classes(space)?;
    space::bad_symbolic(space.carrier(), classes, u, space.convention())
}

/// Union of the cuts of directed sets missing the upper set `u`.
pub fn bad_directed(carrier: &Carrier, u: &SetExpr, convention: DeltaConvention) -> Result<SetExpr> {
    Approx::directed(carrier, convention).bad(u)
}

/// Which sets the approximation quantifies over: irreducible sets of a
/// space (≪_r) or directed sets of a carrier order (≪).
pub(crate) enum Approx<'a> {
    Irreducible(&'a Space),
    Directed {
        carrier: &'a Carrier,
        convention: DeltaConvention,
        /// Directed subsets and their cuts, on finite carriers.
        table: Option<Vec<(Mask, Mask)>>,
    },
}

impl<'a> Approx<'a> {
    pub(crate) fn directed(carrier: &'a Carrier, convention: DeltaConvention) -> Self {
        let table = carrier.as_finite().map(|p| space::directed_with_cuts(p, convention));
        Approx::Directed { carrier, convention, table }
    }

    pub(crate) fn carrier(&self) -> &'a Carrier {
        match self {
            Approx::Irreducible(s) => s.carrier(),
            Approx::Directed { carrier, .. } => carrier,
        }
    }

    pub(crate) fn bad(&self, u: &SetExpr) -> Result<SetExpr> {
        match self {
            Approx::Irreducible(s) => bad(s, u),
            Approx::Directed { table: Some(t), .. } => Ok(SetExpr::from_mask(
                t.iter()
                    .filter(|&&(d, _)| d & u.named_mask() == 0)
                    .fold(0, |acc, &(_, c)| acc | c),
            )),
            Approx::Directed { carrier, convention, table: None } => {
                space::bad_symbolic(carrier, space::directed_classes(carrier), u, *convention)
            }
        }
    }

    /// `A ≪ B` in this sense.
    pub(crate) fn below(&self, a: &SetExpr, b: &SetExpr) -> Result<bool> {
        b.validate(self.carrier())?;
        let up = order::up_closure(self.carrier(), a)?;
        Ok(!b.meets(&self.bad(&up)?))
    }

    /// `{y : y ≪ x}`.
    pub(crate) fn down_of(&self, x: ElementRef) -> Result<SetExpr> {
        let carrier = self.carrier();
        carrier.validate(x)?;
        let xs = SetExpr::point(x);
        // Way-below implies below, so only ↓x needs testing.
        let below = order::principal_down(carrier, x);
        let h = horizon(carrier, &[&xs, &below]);
        filter_points(&below, h, |y| self.below(&SetExpr::point(y), &xs))
    }

    /// `w(x)`.
    pub(crate) fn w(&self, x: ElementRef) -> Result<Wx> {
        let carrier = self.carrier();
        carrier.validate(x)?;
        let xs = SetExpr::point(x);
        if let Some(p) = carrier.as_finite() {
            let members: Vec<Mask> = submasks_by_size(p.full())
                .into_iter()
                .filter(|&f| {
                    let bad = self.bad(&SetExpr::from_mask(p.up_closure(f)));
                    bad.map(|b| !b.contains(x)).unwrap_or(false)
                })
                .collect();
            if members.is_empty() {
                return Ok(Wx { description: WxDescription::Empty, directed: false });
            }
            let directed = order::is_directed_mask_family(p, &members);
            let sets = members.into_iter().map(SetExpr::from_mask).collect();
            return Ok(Wx { description: WxDescription::Explicit(sets), directed });
        }
        if self.below(&xs, &xs)? {
            // ↑{x} = ↑x is the least possible up-set, so {x} alone is cofinal.
            return Ok(Wx { description: WxDescription::Explicit(alloc::vec![xs]), directed: true });
        }
        if let Carrier::OmegaGlued(_) = carrier {
            // Only sets whose up-closure meets the chain can escape the cut
            // of the chain; {x, c_n} are the smallest such.
            let family = WxDescription::Parametric { base: xs.clone(), from: 0 };
            let first = family.instance(0).expect("parametric families are infinite");
            if self.below(&first, &xs)? {
                return Ok(Wx { description: family, directed: true });
            }
        }
        Ok(Wx { description: WxDescription::Empty, directed: false })
    }
}

/// `A ≪ B` over directed sets of the carrier order.
pub fn waybelow_poset(carrier: &Carrier, a: &SetExpr, b: &SetExpr, convention: DeltaConvention) -> Result<bool> {
    Approx::directed(carrier, convention).below(a, b)
}

/// `A ≪_r B`.
pub fn waybelow_r(space: &Space, a: &SetExpr, b: &SetExpr) -> Result<bool> {
    require_finite_nonempty(a)?;
    Approx::Irreducible(space).below(a, b)
}

/// `x ≪_SI y`: every irreducible `F` with a join above `y` has a point above `x`.
pub fn waybelow_si(space: &Space, x: ElementRef, y: ElementRef) -> Result<bool> {
    let fs = space
        .finite()
        .ok_or_else(|| Error::UnsupportedComb(String::from("≪_SI is decided on finite carriers only")))?;
    let (x, y) = match (x, y) {
        (ElementRef::Named(x), ElementRef::Named(y)) if x < fs.len() && y < fs.len() => (x, y),
        _ => return Err(Error::UnknownElement(String::from("point outside the finite carrier"))),
    };
    let p = fs.order();
    Ok(fs.irreducible_sets().iter().all(|&f| match p.join(f) {
        Some(s) if p.leq(y, s) => p.up(x) & f != 0,
        _ => true,
    }))
}

/// `⇑_r H`.
pub fn uu_r(space: &Space, h: &SetExpr) -> Result<SetExpr> {
    require_finite_nonempty(h)?;
    let up = order::up_closure(space.carrier(), h)?;
    Ok(bad(space, &up)?.complement(space.carrier()))
}

/// `⇓_r x`.
pub fn dd_r(space: &Space, x: ElementRef) -> Result<SetExpr> {
    Approx::Irreducible(space).down_of(x)
}

/// `⇓x` for ≪ on the carrier order.
pub fn dd_poset(carrier: &Carrier, x: ElementRef, convention: DeltaConvention) -> Result<SetExpr> {
    Approx::directed(carrier, convention).down_of(x)
}

/// Finite presentation of `w(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WxDescription {
    /// The listed sets; on finite carriers every member of `w(x)`, otherwise
    /// a cofinal subfamily.
    Explicit(Vec<SetExpr>),
    /// `F_n = base ∪ {c_n}` for `n >= from`, cofinal in `w(x)`.
    Parametric { base: SetExpr, from: usize },
    Empty,
}

impl WxDescription {
    /// Member `n` of the description, if it has one.
    pub fn instance(&self, n: usize) -> Option<SetExpr> {
        match self {
            WxDescription::Explicit(v) => v.get(n).cloned(),
            WxDescription::Parametric { base, from } => {
                Some(base.union(&SetExpr::point(ElementRef::Indexed(from + n))))
            }
            WxDescription::Empty => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, WxDescription::Empty)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wx {
    pub description: WxDescription,
    pub directed: bool,
}

/// `w(x) = {F finite : F ≪_r x}`.
pub fn w_of(space: &Space, x: ElementRef) -> Result<Wx> {
    Approx::Irreducible(space).w(x)
}

/// `w(x) = {F finite : F ≪ x}` on the carrier order.
pub fn w_poset(carrier: &Carrier, x: ElementRef, convention: DeltaConvention) -> Result<Wx> {
    Approx::directed(carrier, convention).w(x)
}

/// Finite candidate sets in size-then-lexicographic order: on finite carriers
/// all nonempty subsets, otherwise the named subsets with at most one chain
/// point `c_j`, `j <= horizon` (up-closures of finite sets of a glued carrier
/// are all of this form up to equivalence). On the antichain, subsets of
/// `x_0..=x_horizon`.
pub(crate) fn finite_templates(carrier: &Carrier, horizon: usize) -> Vec<SetExpr> {
    let mut out: Vec<SetExpr> = match carrier {
        Carrier::Finite(p) => submasks_by_size(p.full()).into_iter().map(SetExpr::from_mask).collect(),
        Carrier::OmegaGlued(o) => {
            let nf = o.finite_part().len();
            let mut v = Vec::new();
            for s in core::iter::once(0).chain(submasks_by_size(crate::finite::full_mask(nf))) {
                if s != 0 {
                    v.push(SetExpr::from_mask(s));
                }
                for j in 0..=horizon {
                    v.push(SetExpr::from_parts(s, [j], None));
                }
            }
            v
        }
        Carrier::CountableAntichain => {
            let m = crate::finite::full_mask((horizon + 1).min(12));
            submasks_by_size(m)
                .into_iter()
                .map(|s| SetExpr::points(bits(s).map(ElementRef::Indexed)))
                .collect()
        }
    };
    out.sort_by_key(|s| (s.len().unwrap_or(usize::MAX), s.points_upto(0)));
    out
}

/// A finite `G` with `F ≪_r G ≪_r x`, minimal first.
pub fn interpolate(space: &Space, f: &SetExpr, x: ElementRef) -> Result<SetExpr> {
    if !crate::continuity::is_si2_quasicontinuous(space)?.holds() {
        return Err(Error::NotApplicable(String::from("the space is not SI2-quasicontinuous")));
    }
    interpolate_unchecked(space, f, x)
}

/// [`interpolate`] without re-deciding quasicontinuity.
pub fn interpolate_unchecked(space: &Space, f: &SetExpr, x: ElementRef) -> Result<SetExpr> {
    let xs = SetExpr::point(x);
    if !waybelow_r(space, f, &xs)? {
        return Err(Error::NotApplicable(String::from("F is not way below x")));
    }
    let h = horizon(space.carrier(), &[f, &xs]);
    for g in finite_templates(space.carrier(), h) {
        if waybelow_r(space, f, &g)? && waybelow_r(space, &g, &xs)? {
            return Ok(g);
        }
    }
    Err(Error::InternalFailure(String::from("no interpolating set exists")))
}

/// A finite `G` with `F ≪_r G ≪_r H`: the union of the point witnesses.
pub fn interpolate_set(space: &Space, f: &SetExpr, h: &SetExpr) -> Result<SetExpr> {
    require_finite_nonempty(h)?;
    if !crate::continuity::is_si2_quasicontinuous(space)?.holds() {
        return Err(Error::NotApplicable(String::from("the space is not SI2-quasicontinuous")));
    }
    if !waybelow_r(space, f, h)? {
        return Err(Error::NotApplicable(String::from("F is not way below H")));
    }
    let mut g = SetExpr::empty();
    for p in h.finite_points().expect("finite") {
        g = g.union(&interpolate_unchecked(space, f, p)?);
    }
    if waybelow_r(space, f, &g)? && waybelow_r(space, &g, h)? {
        Ok(g)
    } else {
        Err(Error::InternalFailure(String::from("union of point interpolants fails")))
    }
}

/// A point `e ∈ E` with `F ≪_r e`, given `F ≪_r E^δ`: the first maximal
/// point of `E ∩ ⇑_r F`, or its least chain point when it has no maximal
/// point.
pub fn waybelow_r_irr(space: &Space, f: &SetExpr, e: &SetExpr) -> Result<Option<ElementRef>> {
    require_finite_nonempty(f)?;
    let carrier = space.carrier();
    if !space::is_irreducible(space, e)? {
        return Err(Error::NotApplicable(String::from("E is not irreducible")));
    }
    let cut = order::cut(carrier, e, space.convention())?;
    if !waybelow_r(space, f, &cut)? {
        return Err(Error::NotApplicable(String::from("F is not way below the cut of E")));
    }
    let w = e.intersection(&uu_r(space, f)?);
    if let Some(&m) = order::maximal_points(carrier, &w)?.first() {
        return Ok(Some(m));
    }
    if let Some(i) = w.indexed().iter().next().copied().or(w.tail()) {
        return Ok(Some(ElementRef::Indexed(i)));
    }
    if crate::continuity::is_si2_quasicontinuous(space)?.holds() {
        return Err(Error::InternalFailure(String::from(
            "no point of E is way above F in a quasicontinuous space",
        )));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::{Attachment, OmegaPoset};
    use crate::finite::FinitePoset;
    use crate::space::{Topology, TopologySpec};
    use alloc::string::ToString;
    use alloc::vec;

    fn names(s: &[&str]) -> Vec<String> {
        s.iter().map(|x| x.to_string()).collect()
    }

    fn top_z(c: DeltaConvention) -> Space {
        let o = OmegaPoset::new(
            names(&["top", "z"]),
            &[(1, 0)],
            vec![Attachment::AboveAll, Attachment::Incomparable],
        )
        .unwrap();
        Space::alexandroff(Carrier::OmegaGlued(o), c).unwrap()
    }

    fn omega_a(c: DeltaConvention) -> Space {
        let o = OmegaPoset::new(names(&["a"]), &[], vec![Attachment::AbovePrefix(0)]).unwrap();
        Space::alexandroff(Carrier::OmegaGlued(o), c).unwrap()
    }

    fn cofinite(c: DeltaConvention) -> Space {
        Space::new(Carrier::CountableAntichain, Topology::Spec(TopologySpec::Cofinite), c).unwrap()
    }

    const Z: ElementRef = ElementRef::Named(1);

    #[test]
    fn z_with_a_chain_point_is_way_below_z() {
        let s = top_z(DeltaConvention::StandardCut);
        for n in 0..=20 {
            let f = SetExpr::points([Z, ElementRef::Indexed(n)]);
            assert!(waybelow_r(&s, &f, &SetExpr::point(Z)).unwrap());
        }
        assert!(!waybelow_r(&s, &SetExpr::point(Z), &SetExpr::point(Z)).unwrap());
    }

    #[test]
    fn point_above_first_chain_point() {
        let s = omega_a(DeltaConvention::StandardCut);
        let a = SetExpr::point(ElementRef::Named(0));
        assert!(!waybelow_r(&s, &a, &a).unwrap());
        assert_eq!(dd_r(&s, ElementRef::Named(0)).unwrap(), SetExpr::point(ElementRef::Indexed(0)));
    }

    #[test]
    fn cofinite_way_above_sets() {
        let x = ElementRef::Indexed(3);
        let std = uu_r(&cofinite(DeltaConvention::StandardCut), &SetExpr::point(x)).unwrap();
        assert!(std.is_empty());
        let empty = uu_r(&cofinite(DeltaConvention::EmptyCut), &SetExpr::point(x)).unwrap();
        assert_eq!(empty, SetExpr::point(x));
        assert!(w_of(&cofinite(DeltaConvention::StandardCut), x).unwrap().description.is_empty());
    }

    #[test]
    fn w_of_z_is_parametric() {
        let w = w_of(&top_z(DeltaConvention::StandardCut), Z).unwrap();
        assert_eq!(w.description, WxDescription::Parametric { base: SetExpr::point(Z), from: 0 });
        assert!(w.directed);
    }

    #[test]
    fn antichain_poset_waybelow_is_equality() {
        let c = Carrier::CountableAntichain;
        let x = SetExpr::point(ElementRef::Indexed(1));
        let y = SetExpr::point(ElementRef::Indexed(2));
        assert!(waybelow_poset(&c, &x, &x, DeltaConvention::StandardCut).unwrap());
        assert!(!waybelow_poset(&c, &y, &x, DeltaConvention::StandardCut).unwrap());
    }

    #[test]
    fn two_chain_relations() {
        let p = FinitePoset::chain(names(&["x", "y"])).unwrap();
        let s = Space::alexandroff(Carrier::Finite(p.clone()), DeltaConvention::StandardCut).unwrap();
        let (x, y) = (ElementRef::Named(0), ElementRef::Named(1));
        assert!(waybelow_poset(s.carrier(), &SetExpr::point(x), &SetExpr::point(y), DeltaConvention::StandardCut).unwrap());
        assert!(waybelow_si(&s, x, y).unwrap());
        assert_eq!(waybelow_r_irr(&s, &SetExpr::point(x), &SetExpr::from_mask(0b11)).unwrap(), Some(y));
    }

    #[test]
    fn antichain_si_is_equality() {
        let p = FinitePoset::antichain(names(&["a", "b"])).unwrap();
        let s = Space::alexandroff(Carrier::Finite(p), DeltaConvention::StandardCut).unwrap();
        assert!(!waybelow_si(&s, ElementRef::Named(0), ElementRef::Named(1)).unwrap());
        assert!(waybelow_si(&s, ElementRef::Named(0), ElementRef::Named(0)).unwrap());
    }

    #[test]
    fn irreducible_witnesses_on_the_glued_carrier() {
        let s = top_z(DeltaConvention::StandardCut);
        let c0 = ElementRef::Indexed(0);
        // The cut of the chain is everything, z included, and {c_0} is not
        // way below z.
        assert!(matches!(
            waybelow_r_irr(&s, &SetExpr::point(c0), &SetExpr::tail_from(0)),
            Err(Error::NotApplicable(_))
        ));
        assert_eq!(
            waybelow_r_irr(&s, &SetExpr::points([Z, c0]), &SetExpr::tail_from(0)).unwrap(),
            Some(c0)
        );
        // {z} is not way below z, so the cut condition fails for E = {z}.
        assert!(matches!(
            waybelow_r_irr(&s, &SetExpr::point(Z), &SetExpr::point(Z)),
            Err(Error::NotApplicable(_))
        ));
        let f = SetExpr::points([Z, c0]);
        assert_eq!(waybelow_r_irr(&s, &f, &SetExpr::point(Z)).unwrap(), Some(Z));
    }
}
