//! The weakly irreducible topology: openness, enumeration, the ⇑_r basis,
//! interiors and the open-set lattice.

use alloc::string::String;
use alloc::vec::Vec;

use crate::carrier::{Carrier, ElementRef};
use crate::continuity::{self, representative_points};
use crate::error::{Error, Result};
use crate::finite::{bits, submasks_by_size, Mask, MAX_POINTS};
use crate::lattice::{self, FiniteLattice};
use crate::order;
use crate::setexpr::SetExpr;
use crate::space::{self, FiniteSpace, Space};
use crate::waybelow::{self, finite_templates, horizon};

/// `U ∈ τ` and every irreducible `E` whose cut meets `U` meets `U`.
pub fn is_weakly_irreducibly_open(space: &Space, u: &SetExpr) -> Result<bool> {
    if !space::is_open(space, u)? {
        return Ok(false);
    }
    Ok(!u.meets(&waybelow::bad(space, u)?))
}

fn finite_only(space: &Space) -> Result<&FiniteSpace> {
    space
        .finite()
        .ok_or_else(|| Error::UnsupportedComb(String::from("needs a finite carrier")))
}

/// Weakly irreducibly open sets of a finite space, found by testing every
/// open set.
pub fn si2_opens(space: &Space) -> Result<Vec<Mask>> {
    let fs = finite_only(space)?;
    Ok(fs.opens().iter().copied().filter(|&u| fs.bad(u) & u == 0).collect())
}

/// The weakly irreducible topology of a finite space as an explicit space,
/// re-validated as a T₀ topology.
pub fn si2_topology(space: &Space) -> Result<Space> {
    let fs = finite_only(space)?;
    let opens = si2_opens(space)?;
    let derived = FiniteSpace::from_opens(fs.order().names().to_vec(), &opens, fs.convention())
        .map_err(|e| Error::InternalFailure(alloc::format!("weakly irreducibly open sets: {e}")))?;
    Space::from_finite(derived)
}

/// A member of the ⇑_r basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisFamily {
    /// `⇑_r H` for one finite `H`.
    Single { h: SetExpr, open: SetExpr },
    /// `⇑_r(base ∪ {c_n})` for every `n >= from`.
    ChainParam { base: SetExpr, from: usize },
    /// `⇑_r{x_n}` for every `n >= from`.
    PointParam { from: usize },
}

/// `{⇑_r F : F finite}`, required to be a basis of the weakly irreducible
/// topology. Finite carriers list distinct sets and check that their unions
/// are exactly the weakly irreducibly open sets.
pub fn si2_basis(space: &Space) -> Result<Vec<BasisFamily>> {
    if !continuity::is_si2_quasicontinuous(space)?.holds() {
        return Err(Error::NotApplicable(String::from("the space is not SI2-quasicontinuous")));
    }
    let carrier = space.carrier();
    let mut out: Vec<BasisFamily> = Vec::new();
    match carrier {
        Carrier::Finite(p) => {
            let mut seen: Vec<Mask> = Vec::new();
            for f in submasks_by_size(p.full()) {
                let h = SetExpr::from_mask(f);
                let open = waybelow::uu_r(space, &h)?;
                if !seen.contains(&open.named_mask()) {
                    seen.push(open.named_mask());
                    out.push(BasisFamily::Single { h, open });
                }
            }
            let generated = unions(&seen);
            let mut expected = si2_opens(space)?;
            expected.sort_unstable();
            if generated != expected {
                return Err(Error::InternalFailure(String::from(
                    "way-above sets do not generate the weakly irreducible topology",
                )));
            }
        }
        Carrier::OmegaGlued(o) => {
            for s in core::iter::once(0).chain(submasks_by_size(o.finite_part().full())) {
                let base = SetExpr::from_mask(s);
                if s != 0 {
                    let open = waybelow::uu_r(space, &base)?;
                    out.push(BasisFamily::Single { h: base.clone(), open });
                }
                out.push(BasisFamily::ChainParam { base, from: 0 });
            }
        }
        Carrier::CountableAntichain => out.push(BasisFamily::PointParam { from: 0 }),
    }
    Ok(out)
}

/// Every union of members of `family`, sorted.
fn unions(family: &[Mask]) -> Vec<Mask> {
    let mut acc: Vec<Mask> = alloc::vec![0];
    for &b in family {
        let extra: Vec<Mask> = acc.iter().map(|&a| a | b).filter(|u| !acc.contains(u)).collect();
        for u in extra {
            if !acc.contains(&u) {
                acc.push(u);
            }
        }
    }
    acc.sort_unstable();
    acc
}

/// Interior in the weakly irreducible topology of a finite space.
pub fn interior_si2(space: &Space, a: &SetExpr) -> Result<SetExpr> {
    a.validate(space.carrier())?;
    let a = a.named_mask();
    let inner = si2_opens(space)?.into_iter().filter(|&u| u & !a == 0).fold(0, |m, u| m | u);
    Ok(SetExpr::from_mask(inner))
}

/// The weakly irreducibly open sets of a finite space under inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenSetLattice {
    /// Open sets, element `i` of the lattice is `opens[i]`.
    pub opens: Vec<Mask>,
    pub lattice: FiniteLattice,
}

pub fn open_set_lattice(space: &Space) -> Result<OpenSetLattice> {
    let opens = si2_opens(space)?;
    if opens.len() > MAX_POINTS {
        return Err(Error::TooLarge { size: opens.len(), limit: MAX_POINTS });
    }
    let lattice = lattice::inclusion_lattice(&opens)?;
    let idx = |m: Mask| opens.iter().position(|&u| u == m);
    for i in 0..opens.len() {
        for j in 0..opens.len() {
            let pair = 1 << i | 1 << j;
            if idx(opens[i] | opens[j]) != Some(lattice.join(pair))
                || idx(opens[i] & opens[j]) != Some(lattice.meet(pair))
            {
                return Err(Error::InternalFailure(String::from(
                    "open-set lattice operations are not union and intersection",
                )));
            }
        }
    }
    Ok(OpenSetLattice { opens, lattice })
}

/// Three sides of the characterization of SI₂-quasicontinuity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasicontinuityCheck {
    /// The space is SI₂-quasicontinuous.
    pub quasicontinuous: bool,
    /// Each weakly irreducibly open `U ∋ x` has a finite `F` with
    /// `x ∈ int ↑F ⊆ ↑F ⊆ U`.
    pub interpolation: bool,
    /// The open-set lattice is hypercontinuous; `None` when not evaluated.
    pub hypercontinuous: Option<bool>,
}

impl QuasicontinuityCheck {
    pub fn agree(&self) -> bool {
        self.hypercontinuous.is_none_or(|h| h == self.quasicontinuous)
            && self.interpolation == self.quasicontinuous
    }
}

pub fn quasicontinuity_check(space: &Space) -> Result<QuasicontinuityCheck> {
    let quasicontinuous = continuity::is_si2_quasicontinuous(space)?.holds();
    if let Some(fs) = space.finite() {
        let opens = si2_opens(space)?;
        let int = |a: Mask| opens.iter().filter(|&&u| u & !a == 0).fold(0, |m, &u| m | u);
        let p = fs.order();
        let ups: Vec<Mask> = submasks_by_size(p.full()).into_iter().map(|f| p.up_closure(f)).collect();
        let interpolation = opens.iter().all(|&u| {
            bits(u).all(|x| ups.iter().any(|&up| up & !u == 0 && int(up) >> x & 1 == 1))
        });
        let hypercontinuous = match open_set_lattice(space) {
            Ok(l) => Some(lattice::is_hypercontinuous(&l.lattice)),
            Err(Error::TooLarge { .. }) => None,
            Err(e) => return Err(e),
        };
        return Ok(QuasicontinuityCheck { quasicontinuous, interpolation, hypercontinuous });
    }
    Ok(QuasicontinuityCheck {
        quasicontinuous,
        interpolation: symbolic_interpolation(space)?,
        hypercontinuous: None,
    })
}

/// Candidate opens of a symbolic space: up-closures and way-above sets of
/// finite templates, with the empty set and the whole carrier.
fn candidate_opens(space: &Space, h: usize) -> Result<Vec<SetExpr>> {
    let carrier = space.carrier();
    let mut out = alloc::vec![SetExpr::empty(), SetExpr::whole(carrier)];
    for t in finite_templates(carrier, h) {
        for u in [order::up_closure(carrier, &t)?, waybelow::uu_r(space, &t)?] {
            if !out.contains(&u) && is_weakly_irreducibly_open(space, &u)? {
                out.push(u);
            }
        }
    }
    Ok(out)
}

fn symbolic_interpolation(space: &Space) -> Result<bool> {
    let carrier = space.carrier();
    let h = horizon(carrier, &[]);
    let opens = candidate_opens(space, h)?;
    let templates = finite_templates(carrier, h);
    let points = representative_points(carrier, h);
    for u in &opens {
        for &x in points.iter().filter(|&&x| u.contains(x)) {
            let mut found = false;
            for t in &templates {
                let up = order::up_closure(carrier, t)?;
                if up.is_subset(u) && opens.iter().any(|v| v.contains(x) && v.is_subset(&up)) {
                    found = true;
                    break;
                }
            }
            if !found {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A point `x` of `U` and the finite `F` realizing `x ∈ int ↑F ⊆ U`.
pub fn interpolation_witness(space: &Space, u: &SetExpr, x: ElementRef) -> Result<Option<SetExpr>> {
    let carrier = space.carrier();
    let h = horizon(carrier, &[u]);
    let opens = candidate_opens(space, h)?;
    for t in finite_templates(carrier, h) {
        let up = order::up_closure(carrier, &t)?;
        if up.is_subset(u) && opens.iter().any(|v| v.contains(x) && v.is_subset(&up)) {
            return Ok(Some(t));
        }
    }
    Ok(None)
}
