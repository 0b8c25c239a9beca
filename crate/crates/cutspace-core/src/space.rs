//! Topologies over carriers, specialization order, closure and interior,
//! and irreducible sets.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::carrier::{Carrier, ElementRef};
use crate::error::{Error, Result};
use crate::finite::{bits, full_mask, submasks_by_size, FinitePoset, Mask};
use crate::order::{self, DeltaConvention};
use crate::setexpr::SetExpr;

/// Largest finite carrier whose topology is materialized.
pub const EXHAUSTIVE_LIMIT: usize = 14;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TopologySpec {
    /// A user-supplied open family on a finite carrier.
    Explicit(Vec<Mask>),
    /// All upper sets.
    Alexandroff,
    /// Generated by the complements of principal down-sets.
    Upper,
    /// Upper sets `U` with `D^δ ∩ U ≠ ∅ ⟹ D ∩ U ≠ ∅` for directed `D`.
    WeakScott,
    Scott,
    /// Cofinite subsets plus the empty set; countable antichain only.
    Cofinite,
}

impl TopologySpec {
    pub fn keyword(&self) -> &'static str {
        match self {
            TopologySpec::Explicit(_) => "explicit",
            TopologySpec::Alexandroff => "alexandroff",
            TopologySpec::Upper => "upper",
            TopologySpec::WeakScott => "weakscott",
            TopologySpec::Scott => "scott",
            TopologySpec::Cofinite => "cofinite",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Topology {
    Spec(TopologySpec),
    /// The weakly irreducible topology of the space with the inner topology.
    Si2Derived(Box<Topology>),
}

impl Topology {
    pub fn si2(base: Topology) -> Self {
        Topology::Si2Derived(Box::new(base))
    }

    fn spec(&self) -> Option<&TopologySpec> {
        match self {
            Topology::Spec(s) => Some(s),
            Topology::Si2Derived(_) => None,
        }
    }
}

impl From<TopologySpec> for Topology {
    fn from(s: TopologySpec) -> Self {
        Topology::Spec(s)
    }
}

/// A materialized finite T₀ space. Points keep the carrier's indices; the
/// stored order is the specialization order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSpace {
    order: FinitePoset,
    opens: Vec<Mask>,
    /// Smallest open neighbourhood of each point.
    nbhd: Vec<Mask>,
    irr: Vec<Mask>,
    irr_cut: Vec<Mask>,
    convention: DeltaConvention,
}

impl FiniteSpace {
    /// Validates `opens` as a T₀ topology on the named points.
    pub fn from_opens(names: Vec<String>, opens: &[Mask], convention: DeltaConvention) -> Result<Self> {
        let n = names.len();
        check_size(n)?;
        let full = full_mask(n);
        let mut sorted: Vec<Mask> = opens.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&bad) = sorted.iter().find(|&&u| u & !full != 0) {
            return Err(Error::NotTopology(format!("open set {bad:#b} has points outside the carrier")));
        }
        if sorted.binary_search(&0).is_err() {
            return Err(Error::NotTopology(String::from("the empty set is missing")));
        }
        if sorted.binary_search(&full).is_err() {
            return Err(Error::NotTopology(String::from("the whole carrier is missing")));
        }
        let nbhd: Vec<Mask> = (0..n)
            .map(|x| sorted.iter().filter(|&&u| u >> x & 1 == 1).fold(full, |a, &u| a & u))
            .collect();
        // A family is closed under unions and intersections exactly when it
        // is the family of sets containing the least neighbourhood of each of
        // their points.
        let upper = upper_sets(&nbhd, n);
        if upper != sorted {
            let witness = upper.iter().find(|u| sorted.binary_search(u).is_err());
            return Err(Error::NotTopology(match witness {
                Some(u) => format!("not closed under unions and intersections (missing {u:#b})"),
                None => String::from("not closed under unions and intersections"),
            }));
        }
        Self::from_nbhd(names, nbhd, convention)
    }

    /// The space whose least neighbourhoods are `nbhd`.
    pub fn from_nbhd(names: Vec<String>, nbhd: Vec<Mask>, convention: DeltaConvention) -> Result<Self> {
        let n = names.len();
        check_size(n)?;
        let order = FinitePoset::from_up_sets(names, nbhd.clone()).map_err(|e| match e {
            Error::NotPartialOrder(m) => Error::NotT0(m),
            e => e,
        })?;
        let opens = upper_sets(&nbhd, n);
        let irr: Vec<Mask> = submasks_by_size(full_mask(n))
            .into_iter()
            .filter(|&e| irreducible_by_nbhd(&nbhd, e))
            .collect();
        let irr_cut = irr.iter().map(|&e| order.cut(e, convention)).collect();
        Ok(Self { order, opens, nbhd, irr, irr_cut, convention })
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn full(&self) -> Mask {
        self.order.full()
    }

    /// The specialization order.
    pub fn order(&self) -> &FinitePoset {
        &self.order
    }

    pub fn convention(&self) -> DeltaConvention {
        self.convention
    }

    /// All open sets in increasing numeric order.
    pub fn opens(&self) -> &[Mask] {
        &self.opens
    }

    pub fn nbhd(&self, x: usize) -> Mask {
        self.nbhd[x]
    }

    pub fn is_open(&self, u: Mask) -> bool {
        bits(u).all(|x| self.nbhd[x] & !u == 0)
    }

    pub fn is_closed(&self, c: Mask) -> bool {
        self.is_open(self.full() & !c)
    }

    pub fn interior(&self, a: Mask) -> Mask {
        bits(a).filter(|&x| self.nbhd[x] & !a == 0).fold(0, |m, x| m | 1 << x)
    }

    pub fn closure(&self, a: Mask) -> Mask {
        (0..self.len()).filter(|&y| self.nbhd[y] & a != 0).fold(0, |m, y| m | 1 << y)
    }

    /// Any two opens meeting `e` meet inside `e`.
    pub fn is_irreducible(&self, e: Mask) -> bool {
        irreducible_by_nbhd(&self.nbhd, e)
    }

    /// Irreducible sets, by size and then lexicographically.
    pub fn irreducible_sets(&self) -> &[Mask] {
        &self.irr
    }

    /// Irreducible sets paired with their cuts.
    pub fn irreducible_cuts(&self) -> impl Iterator<Item = (Mask, Mask)> + '_ {
        self.irr.iter().copied().zip(self.irr_cut.iter().copied())
    }

    /// Union of the cuts of irreducible sets missing `u`.
    pub fn bad(&self, u: Mask) -> Mask {
        self.irreducible_cuts()
            .filter(|&(e, _)| e & u == 0)
            .fold(0, |acc, (_, c)| acc | c)
    }

    /// Same space, cuts recomputed for another convention.
    pub fn with_convention(&self, convention: DeltaConvention) -> Self {
        let irr_cut = self.irr.iter().map(|&e| self.order.cut(e, convention)).collect();
        Self { irr_cut, convention, ..self.clone() }
    }
}

fn check_size(n: usize) -> Result<()> {
    if n > EXHAUSTIVE_LIMIT {
        Err(Error::TooLarge { size: n, limit: EXHAUSTIVE_LIMIT })
    } else {
        Ok(())
    }
}

fn upper_sets(nbhd: &[Mask], n: usize) -> Vec<Mask> {
    (0..=full_mask(n))
        .filter(|&u| bits(u).all(|x| nbhd[x] & !u == 0))
        .collect()
}

fn irreducible_by_nbhd(nbhd: &[Mask], e: Mask) -> bool {
    e != 0 && bits(e).all(|x| bits(e).all(|y| nbhd[x] & nbhd[y] & e != 0))
}

/// Directed subsets of a finite poset with their cuts.
pub fn directed_with_cuts(p: &FinitePoset, convention: DeltaConvention) -> Vec<(Mask, Mask)> {
    submasks_by_size(p.full())
        .into_iter()
        .filter(|&d| p.is_directed(d))
        .map(|d| (d, p.cut(d, convention)))
        .collect()
}

fn upper_topology_nbhd(p: &FinitePoset) -> Vec<Mask> {
    let full = p.full();
    (0..p.len())
        .map(|x| {
            (0..p.len())
                .filter(|&y| !p.leq(x, y))
                .fold(full, |acc, y| acc & !p.down(y))
        })
        .collect()
}

fn weak_scott_opens(p: &FinitePoset, convention: DeltaConvention) -> Vec<Mask> {
    let directed = directed_with_cuts(p, convention);
    (0..=p.full())
        .filter(|&u| p.is_upper(u))
        .filter(|&u| directed.iter().all(|&(d, c)| c & u == 0 || d & u != 0))
        .collect()
}

fn scott_opens(p: &FinitePoset) -> Vec<Mask> {
    let directed: Vec<(Mask, usize)> = submasks_by_size(p.full())
        .into_iter()
        .filter(|&d| p.is_directed(d))
        .filter_map(|d| p.join(d).map(|s| (d, s)))
        .collect();
    (0..=p.full())
        .filter(|&u| p.is_upper(u))
        .filter(|&u| directed.iter().all(|&(d, s)| u >> s & 1 == 0 || d & u != 0))
        .collect()
}

/// Opens of the weakly irreducible topology of a finite space.
pub(crate) fn si2_opens(base: &FiniteSpace) -> Vec<Mask> {
    base.opens()
        .iter()
        .copied()
        .filter(|&u| base.bad(u) & u == 0)
        .collect()
}

fn materialize(p: &FinitePoset, topology: &Topology, convention: DeltaConvention) -> Result<FiniteSpace> {
    let names = p.names().to_vec();
    check_size(p.len())?;
    match topology {
        Topology::Spec(TopologySpec::Explicit(opens)) => {
            let fs = FiniteSpace::from_opens(names, opens, convention)?;
            if fs.order.up_rows() != p.up_rows() {
                return Err(Error::OrderMismatch(String::from(
                    "the declared order is not the specialization order of the open family",
                )));
            }
            Ok(fs)
        }
        Topology::Spec(TopologySpec::Cofinite) => Err(Error::UnsupportedComb(String::from(
            "the cofinite topology is only offered on the countable antichain",
        ))),
        Topology::Spec(spec) => {
            let fs = match spec {
                TopologySpec::Alexandroff => {
                    FiniteSpace::from_nbhd(names, p.up_rows().to_vec(), convention)?
                }
                TopologySpec::Upper => FiniteSpace::from_nbhd(names, upper_topology_nbhd(p), convention)?,
                TopologySpec::WeakScott => {
                    FiniteSpace::from_opens(names, &weak_scott_opens(p, convention), convention)?
                }
                TopologySpec::Scott => FiniteSpace::from_opens(names, &scott_opens(p), convention)?,
                TopologySpec::Explicit(_) | TopologySpec::Cofinite => unreachable!(),
            };
            if fs.order.up_rows() != p.up_rows() {
                return Err(Error::InternalFailure(format!(
                    "specialization order of the {} topology differs from the carrier order",
                    spec.keyword()
                )));
            }
            Ok(fs)
        }
        Topology::Si2Derived(inner) => {
            let base = materialize(p, inner, convention)?;
            FiniteSpace::from_opens(names, &si2_opens(&base), convention).map_err(|e| {
                Error::InternalFailure(format!("weakly irreducibly open sets do not form a T0 topology: {e}"))
            })
        }
    }
}

/// Carrier, topology and cut convention.
#[derive(Clone, Debug)]
pub struct Space {
    carrier: Carrier,
    topology: Topology,
    convention: DeltaConvention,
    finite: Option<FiniteSpace>,
}

impl PartialEq for Space {
    fn eq(&self, other: &Self) -> bool {
        self.carrier == other.carrier
            && self.topology == other.topology
            && self.convention == other.convention
    }
}

impl Space {
    pub fn new(carrier: Carrier, topology: Topology, convention: DeltaConvention) -> Result<Self> {
        let finite = match &carrier {
            Carrier::Finite(p) => Some(materialize(p, &topology, convention)?),
            Carrier::OmegaGlued(_) => {
                check_symbolic(&topology, |s| {
                    matches!(s, TopologySpec::Alexandroff | TopologySpec::Upper | TopologySpec::WeakScott)
                })?;
                None
            }
            Carrier::CountableAntichain => {
                check_symbolic(&topology, |s| {
                    !matches!(s, TopologySpec::Explicit(_) | TopologySpec::Scott)
                })?;
                None
            }
        };
        Ok(Self { carrier, topology, convention, finite })
    }

    /// The Alexandroff space of a carrier.
    pub fn alexandroff(carrier: Carrier, convention: DeltaConvention) -> Result<Self> {
        Self::new(carrier, Topology::Spec(TopologySpec::Alexandroff), convention)
    }

    /// Wraps an already materialized finite space.
    pub fn from_finite(fs: FiniteSpace) -> Result<Self> {
        let p = fs.order().clone();
        let opens = fs.opens().to_vec();
        let convention = fs.convention();
        Ok(Self {
            carrier: Carrier::Finite(p),
            topology: Topology::Spec(TopologySpec::Explicit(opens)),
            convention,
            finite: Some(fs),
        })
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn topology(&self) -> &Topology {
        &self.topology
    }

    pub fn convention(&self) -> DeltaConvention {
        self.convention
    }

    pub fn finite(&self) -> Option<&FiniteSpace> {
        self.finite.as_ref()
    }

    pub fn with_convention(&self, convention: DeltaConvention) -> Self {
        Self {
            carrier: self.carrier.clone(),
            topology: self.topology.clone(),
            convention,
            finite: self.finite.as_ref().map(|f| f.with_convention(convention)),
        }
    }

    /// The space whose weakly irreducible topology this one carries.
    pub fn si2_base(&self) -> Option<Space> {
        match &self.topology {
            Topology::Si2Derived(inner) => Some(
                Space::new(self.carrier.clone(), (**inner).clone(), self.convention)
                    .expect("base of a valid derived space is valid"),
            ),
            Topology::Spec(_) => None,
        }
    }

    /// The weakly irreducible topology over this space.
    pub fn si2(&self) -> Result<Space> {
        Space::new(self.carrier.clone(), Topology::si2(self.topology.clone()), self.convention)
    }

    pub(crate) fn symbolic_spec(&self) -> Option<&TopologySpec> {
        self.topology.spec()
    }
}

fn check_symbolic(t: &Topology, ok: impl Fn(&TopologySpec) -> bool + Copy) -> Result<()> {
    match t {
        Topology::Spec(s) if ok(s) => Ok(()),
        Topology::Spec(s) => Err(Error::UnsupportedComb(format!(
            "the {} topology is not offered on this carrier",
            s.keyword()
        ))),
        Topology::Si2Derived(inner) => check_symbolic(inner, ok),
    }
}

fn unsupported(what: &str) -> Error {
    Error::UnsupportedComb(String::from(what))
}

/// The chain tail of a glued carrier, as a subset.
fn meets_chain(u: &SetExpr) -> bool {
    u.has_tail() || !u.indexed().is_empty()
}

pub fn is_open(space: &Space, u: &SetExpr) -> Result<bool> {
    u.validate(space.carrier())?;
    if let Some(fs) = space.finite() {
        return Ok(fs.is_open(u.named_mask()));
    }
    let carrier = space.carrier();
    let spec = match space.symbolic_spec() {
        Some(s) => s,
        None => {
            let base = space.si2_base().expect("derived topology");
            return crate::si2::is_weakly_irreducibly_open(&base, u);
        }
    };
    match (carrier, spec) {
        (Carrier::OmegaGlued(o), _) => {
            if !order::is_upper(carrier, u)? {
                return Ok(false);
            }
            Ok(match spec {
                TopologySpec::Alexandroff => true,
                // An upper set missing the chain is υ-open exactly when each of
                // its points lies outside ↓ω for some ω above the whole chain.
                TopologySpec::Upper => {
                    meets_chain(u)
                        || bits(u.named_mask()).all(|f| {
                            bits(o.above_chain()).any(|w| !o.finite_part().leq(f, w))
                        })
                }
                // The only directed sets without a greatest element are the
                // chain-cofinal ones, all with cut `tail_cut`.
                TopologySpec::WeakScott => {
                    meets_chain(u) || !tail_cut(carrier, space.convention()).meets(u)
                }
                _ => return Err(unsupported("topology on a glued carrier")),
            })
        }
        (Carrier::CountableAntichain, TopologySpec::Cofinite | TopologySpec::Upper) => {
            Ok(u.is_empty() || u.has_tail())
        }
        (Carrier::CountableAntichain, TopologySpec::Alexandroff | TopologySpec::WeakScott) => Ok(true),
        _ => Err(unsupported("openness for this carrier and topology")),
    }
}

/// `cut(tail(0))`: the cut of every chain-cofinal set.
pub fn tail_cut(carrier: &Carrier, convention: DeltaConvention) -> SetExpr {
    order::cut(carrier, &SetExpr::tail_from(0), convention).unwrap_or_default()
}

/// `y ∈ cl{x}`.
pub fn specialization_leq(space: &Space, y: ElementRef, x: ElementRef) -> Result<bool> {
    space.carrier().validate(x)?;
    space.carrier().validate(y)?;
    match (space.finite(), x, y) {
        (Some(fs), ElementRef::Named(x), ElementRef::Named(y)) => Ok(fs.order().leq(y, x)),
        // Every symbolic topology offered has the carrier order as its
        // specialization order.
        _ => space.carrier().leq(y, x),
    }
}

pub fn closure(space: &Space, a: &SetExpr) -> Result<SetExpr> {
    a.validate(space.carrier())?;
    if let Some(fs) = space.finite() {
        return Ok(SetExpr::from_mask(fs.closure(a.named_mask())));
    }
    match (space.carrier(), space.symbolic_spec()) {
        (Carrier::OmegaGlued(_), Some(TopologySpec::Alexandroff)) => order::down_closure(space.carrier(), a),
        (Carrier::CountableAntichain, Some(TopologySpec::Alexandroff | TopologySpec::WeakScott)) => Ok(a.clone()),
        (Carrier::CountableAntichain, Some(TopologySpec::Cofinite | TopologySpec::Upper)) => {
            Ok(if a.is_finite() { a.clone() } else { SetExpr::whole(space.carrier()) })
        }
        _ => Err(unsupported("closure for this carrier and topology")),
    }
}

pub fn interior(space: &Space, a: &SetExpr) -> Result<SetExpr> {
    a.validate(space.carrier())?;
    if let Some(fs) = space.finite() {
        return Ok(SetExpr::from_mask(fs.interior(a.named_mask())));
    }
    let carrier = space.carrier();
    match (carrier, space.symbolic_spec()) {
        (Carrier::OmegaGlued(_), Some(TopologySpec::Alexandroff)) => {
            let outside = order::down_closure(carrier, &a.complement(carrier))?;
            Ok(outside.complement(carrier))
        }
        (Carrier::CountableAntichain, Some(TopologySpec::Alexandroff | TopologySpec::WeakScott)) => Ok(a.clone()),
        (Carrier::CountableAntichain, Some(TopologySpec::Cofinite | TopologySpec::Upper)) => {
            Ok(if a.has_tail() { a.clone() } else { SetExpr::empty() })
        }
        _ => Err(unsupported("interior for this carrier and topology")),
    }
}

pub fn is_irreducible(space: &Space, e: &SetExpr) -> Result<bool> {
    e.validate(space.carrier())?;
    if e.is_empty() {
        return Err(Error::EmptySet);
    }
    if let Some(fs) = space.finite() {
        return Ok(fs.is_irreducible(e.named_mask()));
    }
    let carrier = space.carrier();
    match (carrier, space.symbolic_spec()) {
        (Carrier::OmegaGlued(_), Some(TopologySpec::Alexandroff)) => order::is_directed(carrier, e),
        (Carrier::OmegaGlued(o), Some(TopologySpec::Upper)) => {
            if order::greatest(carrier, e)?.is_some() {
                return Ok(true);
            }
            Ok(e.has_tail()
                && order::upper_bounds(carrier, e)? == SetExpr::from_mask(o.above_chain()))
        }
        (Carrier::CountableAntichain, Some(TopologySpec::Cofinite | TopologySpec::Upper)) => {
            Ok(e.len().is_none_or(|k| k == 1))
        }
        (Carrier::CountableAntichain, Some(TopologySpec::Alexandroff | TopologySpec::WeakScott)) => {
            Ok(e.len() == Some(1))
        }
        _ => Err(unsupported("irreducibility for this carrier and topology")),
    }
}

fn finite_only(space: &Space) -> Result<&FiniteSpace> {
    space
        .finite()
        .ok_or_else(|| unsupported("exhaustive enumeration needs a finite carrier"))
}

pub fn irreducible_sets(space: &Space) -> Result<Vec<Mask>> {
    Ok(finite_only(space)?.irreducible_sets().to_vec())
}

pub fn enumerate_opens(space: &Space) -> Result<Vec<Mask>> {
    Ok(finite_only(space)?.opens().to_vec())
}

/// Shapes of irreducible (or directed) sets, grouped by the cut they have
/// and the condition under which a member avoids a given upper set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutClass {
    /// Sets with a greatest element `m`; the cut is `↓m`.
    Principal,
    /// Sets without a greatest element that contain chain points cofinally;
    /// the cut is [`tail_cut`].
    ChainCofinal,
    /// Infinite subsets of the countable antichain; the cut is everything
    /// or nothing depending on the convention.
    Infinite,
}

/// Irreducible-set shapes of a symbolic space.
pub fn irreducible_classes(space: &Space) -> Result<&'static [CutClass]> {
    use CutClass::*;
    match (space.carrier(), space.symbolic_spec()) {
        (Carrier::OmegaGlued(_), Some(TopologySpec::Alexandroff | TopologySpec::Upper)) => {
            Ok(&[Principal, ChainCofinal])
        }
        (Carrier::CountableAntichain, Some(TopologySpec::Cofinite | TopologySpec::Upper)) => {
            Ok(&[Principal, Infinite])
        }
        (Carrier::CountableAntichain, Some(TopologySpec::Alexandroff | TopologySpec::WeakScott)) => {
            Ok(&[Principal])
        }
        _ => Err(unsupported("irreducible sets of this carrier and topology")),
    }
}

/// Directed-set shapes of a symbolic carrier.
pub fn directed_classes(carrier: &Carrier) -> &'static [CutClass] {
    match carrier {
        Carrier::OmegaGlued(_) => &[CutClass::Principal, CutClass::ChainCofinal],
        _ => &[CutClass::Principal],
    }
}

/// Union of `E^δ` over the sets `E` of the given shapes that miss the upper
/// set `u`.
pub fn bad_symbolic(
    carrier: &Carrier,
    classes: &[CutClass],
    u: &SetExpr,
    convention: DeltaConvention,
) -> Result<SetExpr> {
    debug_assert!(order::is_upper(carrier, u)?);
    let mut acc = SetExpr::empty();
    for class in classes {
        match class {
            CutClass::Principal => acc = acc.union(&u.complement(carrier)),
            CutClass::ChainCofinal => {
                if !meets_chain(u) {
                    acc = acc.union(&tail_cut(carrier, convention));
                }
            }
            CutClass::Infinite => {
                if !u.has_tail() && convention == DeltaConvention::StandardCut {
                    acc = SetExpr::whole(carrier);
                }
            }
        }
    }
    Ok(acc)
}
