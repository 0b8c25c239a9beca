//! Nets presented as interleaved strands, their 𝒟-limits, 𝒢𝒟-limits and
//! topological limits.

use alloc::string::String;
use alloc::vec::Vec;

use crate::carrier::{Carrier, ElementRef};
use crate::continuity::{self, family_meet, representative_points};
use crate::error::{Error, Result};
use crate::finite::{bits, submasks_by_size, Mask};
use crate::order;
use crate::setexpr::SetExpr;
use crate::space::{self, Space, Topology};
use crate::waybelow::{self, filter_points, finite_templates, horizon, WxDescription};

/// One strand of a net: a constant, or the chain points `c_k, c_{k+1}, ...`
/// (`x_k, x_{k+1}, ...` on the countable antichain).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strand {
    Constant(ElementRef),
    ChainCofinal(usize),
}

/// A net indexed by the naturals, visiting its strands round-robin.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NetPresentation {
    strands: Vec<Strand>,
}

impl NetPresentation {
    pub fn new(carrier: &Carrier, strands: Vec<Strand>) -> Result<Self> {
        if strands.is_empty() {
            return Err(Error::EmptyFamily);
        }
        for s in &strands {
            match *s {
                Strand::Constant(e) => carrier.validate(e)?,
                Strand::ChainCofinal(_) if !carrier.has_indexed() => {
                    return Err(Error::UnsupportedComb(String::from(
                        "chain strands need a carrier with indexed points",
                    )))
                }
                Strand::ChainCofinal(_) => {}
            }
        }
        Ok(Self { strands })
    }

    pub fn constant(carrier: &Carrier, x: ElementRef) -> Result<Self> {
        Self::new(carrier, alloc::vec![Strand::Constant(x)])
    }

    pub fn strands(&self) -> &[Strand] {
        &self.strands
    }

    /// The net's value at index `j`.
    pub fn value(&self, j: usize) -> ElementRef {
        let s = self.strands.len();
        match self.strands[j % s] {
            Strand::Constant(e) => e,
            Strand::ChainCofinal(k) => ElementRef::Indexed(k + j / s),
        }
    }

    fn mentioned(&self) -> SetExpr {
        SetExpr::points(self.strands.iter().map(|s| match *s {
            Strand::Constant(e) => e,
            Strand::ChainCofinal(k) => ElementRef::Indexed(k),
        }))
    }
}

/// The net lies in `u` from some index on.
pub fn eventually_in(net: &NetPresentation, u: &SetExpr) -> bool {
    net.strands.iter().all(|s| match *s {
        Strand::Constant(e) => u.contains(e),
        Strand::ChainCofinal(_) => u.has_tail(),
    })
}

/// `{d : d <= x_j eventually}`.
pub fn eventual_lower_bounds(space: &Space, net: &NetPresentation) -> Result<SetExpr> {
    let carrier = space.carrier();
    let mut acc = SetExpr::whole(carrier);
    for s in &net.strands {
        let lb = match *s {
            Strand::Constant(e) => order::principal_down(carrier, e),
            // d <= c_n for cofinally many n: chain points and whatever lies
            // below some chain point.
            Strand::ChainCofinal(_) => match carrier {
                Carrier::OmegaGlued(o) => SetExpr::from_parts(o.below_chain(), [], Some(0)),
                _ => SetExpr::empty(),
            },
        };
        acc = acc.intersection(&lb);
    }
    Ok(acc)
}

/// The net lies in `↑F` eventually.
pub fn is_quasi_eventual_lb(space: &Space, net: &NetPresentation, f: &SetExpr) -> Result<bool> {
    f.validate(space.carrier())?;
    if f.is_empty() {
        return Err(Error::EmptySet);
    }
    if !f.is_finite() {
        return Err(Error::InvalidSet(String::from("argument must be finite")));
    }
    Ok(eventually_in(net, &order::up_closure(space.carrier(), f)?))
}

/// Why a point is a limit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LimitWitness {
    /// A directed set of eventual lower bounds whose cut contains the point.
    Directed(SetExpr),
    /// A directed family of quasi-eventual lower bounds whose up-sets
    /// intersect inside the point's up-set.
    Family(WxDescription),
}

/// A limit set with a witness for every representative point in it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    pub set: SetExpr,
    pub witnesses: Vec<(ElementRef, LimitWitness)>,
}

fn net_horizon(carrier: &Carrier, net: &NetPresentation) -> usize {
    horizon(carrier, &[&net.mentioned()])
}

/// Points `x` with a directed `D` of eventual lower bounds and `x ∈ D^δ`.
pub fn d_limits(space: &Space, net: &NetPresentation) -> Result<Limits> {
    let carrier = space.carrier();
    let conv = space.convention();
    let lower = eventual_lower_bounds(space, net)?;
    if let Some(p) = carrier.as_finite() {
        let table: Vec<(Mask, Mask)> = space::directed_with_cuts(p, conv)
            .into_iter()
            .filter(|&(d, _)| d & !lower.named_mask() == 0)
            .collect();
        let set = table.iter().fold(0, |m, &(_, c)| m | c);
        let witnesses = bits(set)
            .map(|x| {
                let &(d, _) = table.iter().find(|&&(_, c)| c >> x & 1 == 1).expect("x is in some cut");
                (ElementRef::Named(x), LimitWitness::Directed(SetExpr::from_mask(d)))
            })
            .collect();
        return Ok(Limits { set: SetExpr::from_mask(set), witnesses });
    }
    // Directed subsets either have a greatest element, with cut ↓m inside
    // the lower set of eventual lower bounds, or are cofinal in the chain.
    let lower = order::down_closure(carrier, &lower)?;
    let chain_part = lower.tail().map(SetExpr::tail_from);
    let mut set = lower.clone();
    if chain_part.is_some() {
        set = set.union(&space::tail_cut(carrier, conv));
    }
    let h = net_horizon(carrier, net);
    let witnesses = representative_points(carrier, h)
        .into_iter()
        .filter(|&x| set.contains(x))
        .map(|x| {
            let d = if lower.contains(x) { SetExpr::point(x) } else { chain_part.clone().expect("chain part") };
            (x, LimitWitness::Directed(d))
        })
        .collect();
    Ok(Limits { set, witnesses })
}

/// The family `{{d} : d ∈ D}` built from a directed-set witness.
pub fn family_from_directed(d: &SetExpr) -> WxDescription {
    match d.tail() {
        Some(t) if d.named_mask() == 0 && d.indexed().is_empty() => {
            WxDescription::Parametric { base: SetExpr::empty(), from: t }
        }
        _ => WxDescription::Explicit(d.points_upto(0).into_iter().map(SetExpr::point).collect()),
    }
}

/// Checks a family witness: members are quasi-eventual lower bounds, the
/// family is directed, and the up-sets meet inside `↑x`. Parametric
/// members are checked up to the horizon of the net and family.
pub fn check_family_witness(
    space: &Space,
    net: &NetPresentation,
    x: ElementRef,
    family: &WxDescription,
) -> Result<bool> {
    let carrier = space.carrier();
    let members: Vec<SetExpr> = match family {
        WxDescription::Empty => return Ok(false),
        WxDescription::Explicit(v) => v.clone(),
        WxDescription::Parametric { base, from } => {
            let h = horizon(carrier, &[&net.mentioned(), base]).max(*from + 1);
            (0..=h - from).filter_map(|n| family.instance(n)).collect()
        }
    };
    for m in &members {
        if !is_quasi_eventual_lb(space, net, m)? {
            return Ok(false);
        }
    }
    if !order::is_directed_family(carrier, &members)? {
        return Ok(false);
    }
    Ok(family_meet(carrier, family)?.is_subset(&order::principal_up(carrier, x)))
}

/// Status of one point under 𝒢𝒟-convergence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GdVerdict {
    pub point: ElementRef,
    /// A family found by search.
    pub witness: Option<WxDescription>,
    /// The search covers every possible family, so no witness means no limit.
    pub search_exhaustive: bool,
    /// Topological convergence in the weakly irreducible topology, when the
    /// space is SI₂-quasicontinuous.
    pub topological: Option<bool>,
}

impl GdVerdict {
    pub fn status(&self) -> Option<bool> {
        if self.witness.is_some() {
            Some(true)
        } else if self.search_exhaustive {
            Some(false)
        } else {
            self.topological
        }
    }
}

/// 𝒢𝒟-limits of the net at the representative points, with the set they
/// determine when every point is decided.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GdLimits {
    pub verdicts: Vec<GdVerdict>,
    pub set: Option<SetExpr>,
}

/// A family witnessing that `x` is a 𝒢𝒟-limit: a single finite set, or on a
/// glued carrier `F₀ ∪ {c_n}` for all `n`.
pub fn gd_witness(space: &Space, net: &NetPresentation, x: ElementRef) -> Result<Option<WxDescription>> {
    let carrier = space.carrier();
    carrier.validate(x)?;
    let up_x = order::principal_up(carrier, x);
    let h = horizon(carrier, &[&net.mentioned(), &SetExpr::point(x)]);
    for f in finite_templates(carrier, h) {
        if f.is_subset(&up_x) && is_quasi_eventual_lb(space, net, &f)? {
            return Ok(Some(WxDescription::Explicit(alloc::vec![f])));
        }
    }
    if let Carrier::OmegaGlued(o) = carrier {
        for s in core::iter::once(0).chain(submasks_by_size(o.finite_part().full())) {
            let family = WxDescription::Parametric { base: SetExpr::from_mask(s), from: 0 };
            if check_family_witness(space, net, x, &family)? {
                return Ok(Some(family));
            }
        }
    }
    Ok(None)
}

/// Searching single finite sets is complete on finite carriers (a finite
/// directed family of up-sets has a least member) and on the antichain
/// (up-sets are the sets themselves).
fn search_is_exhaustive(carrier: &Carrier) -> bool {
    !matches!(carrier, Carrier::OmegaGlued(_))
}

pub fn gd_limits(space: &Space, net: &NetPresentation) -> Result<GdLimits> {
    let carrier = space.carrier();
    let h = net_horizon(carrier, net);
    let topo = if continuity::is_si2_quasicontinuous(space)?.holds() {
        Some(topological_limits(space, net, &Topology::si2(space.topology().clone()))?)
    } else {
        None
    };
    let mut verdicts = Vec::new();
    for x in representative_points(carrier, h) {
        let witness = gd_witness(space, net, x)?;
        let topological = topo.as_ref().map(|t| t.contains(x));
        if witness.is_some() && topological == Some(false) {
            return Err(Error::InternalFailure(String::from(
                "a witnessed limit does not converge in the weakly irreducible topology",
            )));
        }
        verdicts.push(GdVerdict { point: x, witness, search_exhaustive: search_is_exhaustive(carrier), topological });
    }
    let set = if verdicts.iter().all(|v| v.status().is_some()) {
        let lookup = |x: ElementRef| verdicts.iter().find(|v| v.point == x).and_then(|v| v.status());
        Some(filter_points(&SetExpr::whole(carrier), h, |x| Ok(lookup(x).unwrap_or(false)))?)
    } else {
        None
    };
    Ok(GdLimits { verdicts, set })
}

/// Open sets of a symbolic space used to test convergence: up-closures,
/// complements of down-closures and way-above sets of finite templates, and
/// pairwise intersections of those.
fn candidate_opens(space: &Space, h: usize) -> Result<Vec<SetExpr>> {
    let carrier = space.carrier();
    let approx = space.si2_base().unwrap_or_else(|| space.clone());
    let mut raw = alloc::vec![SetExpr::whole(carrier)];
    for t in finite_templates(carrier, h) {
        raw.push(order::up_closure(carrier, &t)?);
        raw.push(order::down_closure(carrier, &t)?.complement(carrier));
        raw.push(t.complement(carrier));
        if let Ok(u) = waybelow::uu_r(&approx, &t) {
            raw.push(u);
        }
    }
    let mut opens: Vec<SetExpr> = Vec::new();
    for u in raw {
        if !opens.contains(&u) && space::is_open(space, &u)? {
            opens.push(u);
        }
    }
    let n = opens.len();
    for i in 0..n {
        for j in i + 1..n {
            let u = opens[i].intersection(&opens[j]);
            if !opens.contains(&u) {
                opens.push(u);
            }
        }
    }
    Ok(opens)
}

/// Points every open neighbourhood of which eventually contains the net.
/// Exact on finite carriers; over the candidate opens otherwise.
pub fn topological_limits(space: &Space, net: &NetPresentation, topology: &Topology) -> Result<SetExpr> {
    let carrier = space.carrier();
    let t = Space::new(carrier.clone(), topology.clone(), space.convention())?;
    if let Some(fs) = t.finite() {
        let bad = fs
            .opens()
            .iter()
            .filter(|&&u| !eventually_in(net, &SetExpr::from_mask(u)))
            .fold(0, |m, &u| m | u);
        return Ok(SetExpr::from_mask(fs.full() & !bad));
    }
    let h = net_horizon(carrier, net);
    let opens = candidate_opens(&t, h)?;
    let bad = opens
        .iter()
        .filter(|u| !eventually_in(net, u))
        .fold(SetExpr::empty(), |m, u| m.union(u));
    filter_points(&SetExpr::whole(carrier), h, |x| Ok(!bad.contains(x)))
}

/// A point where 𝒢𝒟-convergence and convergence in the weakly irreducible
/// topology were compared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetComparison {
    pub net: usize,
    pub point: ElementRef,
    /// 𝒢𝒟-limit by witness search; `None` when the search found nothing and
    /// is not exhaustive.
    pub gd: Option<bool>,
    pub topological: bool,
}

impl NetComparison {
    pub fn disagrees(&self) -> bool {
        self.gd.is_some_and(|g| g != self.topological)
    }
}

/// 𝒢𝒟-convergence against topological convergence over a list of nets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceCheck {
    pub quasicontinuous: bool,
    pub comparisons: Vec<NetComparison>,
}

impl ConvergenceCheck {
    pub fn mismatches(&self) -> impl Iterator<Item = &NetComparison> {
        self.comparisons.iter().filter(|c| c.disagrees())
    }

    pub fn undecided(&self) -> impl Iterator<Item = &NetComparison> {
        self.comparisons.iter().filter(|c| c.gd.is_none())
    }

    pub fn agree(&self) -> bool {
        self.mismatches().next().is_none()
    }

    /// Agreement is required when the space is SI₂-quasicontinuous.
    pub fn consistent(&self) -> bool {
        !self.quasicontinuous || (self.agree() && self.undecided().all(|c| !c.topological))
    }
}

pub fn convergence_check(space: &Space, nets: &[NetPresentation]) -> Result<ConvergenceCheck> {
    let carrier = space.carrier();
    let quasicontinuous = continuity::is_si2_quasicontinuous(space)?.holds();
    let si2 = Topology::si2(space.topology().clone());
    let mut comparisons = Vec::new();
    for (i, net) in nets.iter().enumerate() {
        let topo = topological_limits(space, net, &si2)?;
        for x in representative_points(carrier, net_horizon(carrier, net)) {
            let gd = match gd_witness(space, net, x)? {
                Some(_) => Some(true),
                None if search_is_exhaustive(carrier) => Some(false),
                None => None,
            };
            comparisons.push(NetComparison { net: i, point: x, gd, topological: topo.contains(x) });
        }
    }
    Ok(ConvergenceCheck { quasicontinuous, comparisons })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::{Attachment, OmegaPoset};
    use crate::finite::FinitePoset;
    use crate::order::DeltaConvention;
    use crate::space::TopologySpec;
    use alloc::string::ToString;
    use alloc::vec;

    const TOP: ElementRef = ElementRef::Named(0);
    const Z: ElementRef = ElementRef::Named(1);

    fn names(s: &[&str]) -> Vec<String> {
        s.iter().map(|x| x.to_string()).collect()
    }

    fn top_z() -> Space {
        let o = OmegaPoset::new(
            names(&["top", "z"]),
            &[(1, 0)],
            vec![Attachment::AboveAll, Attachment::Incomparable],
        )
        .unwrap();
        Space::alexandroff(Carrier::OmegaGlued(o), DeltaConvention::StandardCut).unwrap()
    }

    fn alternating(s: &Space) -> NetPresentation {
        NetPresentation::new(s.carrier(), vec![Strand::ChainCofinal(0), Strand::Constant(Z)]).unwrap()
    }

    #[test]
    fn net_values() {
        let s = top_z();
        let net = alternating(&s);
        assert_eq!(net.value(0), ElementRef::Indexed(0));
        assert_eq!(net.value(1), Z);
        assert_eq!(net.value(4), ElementRef::Indexed(2));
    }

    #[test]
    fn alternating_net_lower_bounds() {
        let s = top_z();
        let net = alternating(&s);
        assert!(eventual_lower_bounds(&s, &net).unwrap().is_empty());
        for n in 0..15 {
            assert!(is_quasi_eventual_lb(&s, &net, &SetExpr::from_parts(0b10, [n], None)).unwrap());
        }
        assert!(!is_quasi_eventual_lb(&s, &net, &SetExpr::point(Z)).unwrap());
    }

    #[test]
    fn alternating_net_limits() {
        let s = top_z();
        let net = alternating(&s);
        assert!(!d_limits(&s, &net).unwrap().set.contains(Z));
        let w = gd_witness(&s, &net, Z).unwrap().unwrap();
        assert_eq!(w, WxDescription::Parametric { base: SetExpr::point(Z), from: 0 });
        let gd = gd_limits(&s, &net).unwrap();
        assert_eq!(gd.set, Some(SetExpr::point(Z)));
        let si2 = topological_limits(&s, &net, &Topology::si2(TopologySpec::Alexandroff.into())).unwrap();
        assert!(si2.contains(Z));
        let alpha = topological_limits(&s, &net, &TopologySpec::Alexandroff.into()).unwrap();
        assert!(!alpha.contains(Z));
    }

    #[test]
    fn chain_net_d_limits() {
        let s = top_z();
        let net = NetPresentation::new(s.carrier(), vec![Strand::ChainCofinal(0)]).unwrap();
        let d = d_limits(&s, &net).unwrap();
        assert!(d.set.contains(TOP) && d.set.contains(Z));
    }

    #[test]
    fn constant_nets() {
        let s = top_z();
        let net = NetPresentation::constant(s.carrier(), Z).unwrap();
        assert_eq!(eventual_lower_bounds(&s, &net).unwrap(), SetExpr::point(Z));
        let d = d_limits(&s, &net).unwrap();
        assert_eq!(d.witnesses, vec![(Z, LimitWitness::Directed(SetExpr::point(Z)))]);
        assert!(gd_witness(&s, &net, Z).unwrap().is_some());
        assert!(topological_limits(&s, &net, &TopologySpec::Alexandroff.into()).unwrap().contains(Z));
    }

    #[test]
    fn cycling_net_on_vee() {
        let p = FinitePoset::new(names(&["b", "x", "y"]), &[(0, 1), (0, 2)]).unwrap();
        let s = Space::alexandroff(Carrier::Finite(p), DeltaConvention::StandardCut).unwrap();
        let net = NetPresentation::new(
            s.carrier(),
            vec![Strand::Constant(ElementRef::Named(1)), Strand::Constant(ElementRef::Named(2))],
        )
        .unwrap();
        assert_eq!(gd_limits(&s, &net).unwrap().set, Some(SetExpr::from_mask(0b001)));
        assert!(convergence_check(&s, &[net]).unwrap().agree());
    }

    #[test]
    fn cofinite_mismatch() {
        let s = Space::new(
            Carrier::CountableAntichain,
            TopologySpec::Cofinite.into(),
            DeltaConvention::StandardCut,
        )
        .unwrap();
        let net = NetPresentation::new(s.carrier(), vec![Strand::ChainCofinal(0)]).unwrap();
        let c = convergence_check(&s, &[net]).unwrap();
        assert!(!c.quasicontinuous);
        assert!(!c.agree());
    }

    #[test]
    fn chain_strands_rejected_on_finite_carriers() {
        let p = FinitePoset::chain(names(&["x"])).unwrap();
        let c = Carrier::Finite(p);
        assert!(matches!(NetPresentation::new(&c, vec![Strand::ChainCofinal(0)]), Err(Error::UnsupportedComb(_))));
        assert_eq!(NetPresentation::new(&c, vec![]), Err(Error::EmptyFamily));
    }
}
