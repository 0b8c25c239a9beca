//! Characterizations of quasicontinuity, the weakly irreducible topology and
//! the way-below relation on finite spaces.
//!
//! Every finite T0 space is the Alexandroff topology of its specialization
//! order, so sweeping labeled posets sweeps all finite T0 spaces.

use cutspace_core::continuity;
use cutspace_core::finite::{bits, Mask};
use cutspace_core::order::is_directed_mask_family;
use cutspace_core::si2;
use cutspace_core::space::enumerate_opens;
use cutspace_core::waybelow;
use cutspace_core::{Carrier, DeltaConvention, FinitePoset, SetExpr, Space, TopologySpec};

use super::{instances, nonempty_subsets, small_families, suite_report, sweep_all, unless, Instance, SuiteParams, Sweep};
use crate::report::Report;

/// A finite poset with its Alexandroff space under one convention and the
/// full `≪_r` table between nonempty subsets.
pub(crate) struct FiniteCtx {
    pub p: FinitePoset,
    pub carrier: Carrier,
    pub space: Space,
    pub conv: DeltaConvention,
    /// `wb[g]` has bit `h` set iff `G ≪_r H`; row and bit 0 are unused.
    pub wb: Vec<Mask>,
}

impl FiniteCtx {
    pub fn new(p: &FinitePoset, conv: DeltaConvention) -> cutspace_core::Result<Self> {
        let carrier = Carrier::Finite(p.clone());
        let space = Space::alexandroff(carrier.clone(), conv)?;
        let n = p.len();
        let mut wb = vec![0; 1 << n];
        for g in nonempty_subsets(n) {
            for h in nonempty_subsets(n) {
                if waybelow::waybelow_r(&space, &SetExpr::from_mask(g), &SetExpr::from_mask(h))? {
                    wb[g as usize] |= 1 << h;
                }
            }
        }
        Ok(Self { p: p.clone(), carrier, space, conv, wb })
    }

    pub fn n(&self) -> usize {
        self.p.len()
    }

    pub fn below(&self, g: Mask, h: Mask) -> bool {
        self.wb[g as usize] >> h & 1 == 1
    }

    pub fn up(&self, a: Mask) -> Mask {
        self.p.up_closure(a)
    }

    pub fn name(&self, a: Mask) -> String {
        let names: Vec<&str> = bits(a).map(|i| self.p.name(i)).collect();
        format!("{{{}}}", names.join(","))
    }
}

fn sorted(mut v: Vec<Mask>) -> Vec<Mask> {
    v.sort_unstable();
    v.dedup();
    v
}

const INTRINSIC: [TopologySpec; 4] =
    [TopologySpec::Alexandroff, TopologySpec::Upper, TopologySpec::WeakScott, TopologySpec::Scott];

/// The equivalence checks: the three sides of the quasicontinuity
/// characterization, the weakly irreducible topology and its basis, and the
/// coincidence of the intrinsic topologies.
pub(crate) fn equivalences(s: &mut Sweep, c: &FiniteCtx) {
    let conv = c.conv;
    let n = c.n();
    s.check("quasicontinuity-equivalence", "quasicontinuity, open interpolation and hypercontinuity agree", conv, || {
        let q = si2::quasicontinuity_check(&c.space)?;
        Ok(unless(q.agree() && q.hypercontinuous.is_some(), || format!("{q:?}")))
    });
    let opens = match si2::si2_opens(&c.space) {
        Ok(o) => sorted(o),
        Err(e) => {
            s.check("si2-topology", "weakly irreducibly open sets are computable", conv, || Err(e));
            return;
        }
    };
    s.check("si2-of-alexandroff-is-weak-scott", "weakly irreducible topology of the Alexandroff space is the weak Scott topology", conv, || {
        let ws = Space::new(c.carrier.clone(), TopologySpec::WeakScott.into(), conv)?;
        let w = sorted(enumerate_opens(&ws)?);
        Ok(unless(w == opens, || format!("weak Scott {w:?}, weakly irreducible {opens:?}")))
    });
    s.check("intrinsic-topologies-coincide", "upper, weak Scott, Scott and Alexandroff opens coincide", conv, || {
        let base = sorted(enumerate_opens(&c.space)?);
        for spec in INTRINSIC {
            let o = sorted(enumerate_opens(&Space::new(c.carrier.clone(), spec.clone().into(), conv)?)?);
            if o != base {
                return Ok(Some(format!("{} has {} opens, Alexandroff {}", spec.keyword(), o.len(), base.len())));
            }
        }
        Ok(None)
    });
    s.check("way-above-is-interior", "way-above set of H is the weakly irreducible interior of its up-set", conv, || {
        for h in nonempty_subsets(n) {
            let hs = SetExpr::from_mask(h);
            let int = si2::interior_si2(&c.space, &SetExpr::from_mask(c.up(h)))?;
            let uu = waybelow::uu_r(&c.space, &hs)?;
            if int != uu {
                return Ok(Some(format!("H = {}", c.name(h))));
            }
        }
        Ok(None)
    });
    s.check("open-iff-approximated", "U is open iff each point has a finite set way below it with up-set inside U", conv, || {
        for u in 0..(1 as Mask) << n {
            let approximated =
                bits(u).all(|x| nonempty_subsets(n).any(|f| c.below(f, 1 << x) && c.up(f) & !u == 0));
            if approximated != opens.binary_search(&u).is_ok() {
                return Ok(Some(format!("U = {}", c.name(u))));
            }
        }
        Ok(None)
    });
    s.check("way-above-sets-form-basis", "way-above sets of finite sets form a basis", conv, || {
        let basis: Vec<Mask> = nonempty_subsets(n)
            .map(|f| waybelow::uu_r(&c.space, &SetExpr::from_mask(f)).map(|u| u.named_mask()))
            .collect::<cutspace_core::Result<_>>()?;
        if let Some(b) = basis.iter().find(|b| opens.binary_search(b).is_err()) {
            return Ok(Some(format!("{} is not open", c.name(*b))));
        }
        Ok(opens
            .iter()
            .find(|&&u| basis.iter().filter(|&&b| b & !u == 0).fold(0, |m, &b| m | b) != u)
            .map(|&u| format!("{} is not a union of basic sets", c.name(u))))
    });
    s.check("alexandroff-reduction", "Alexandroff space is SI2-quasicontinuous iff the poset is s2-quasicontinuous", conv, || {
        let a = continuity::is_si2_quasicontinuous(&c.space)?.holds();
        let b = continuity::is_s2_quasicontinuous(&c.carrier, conv)?.holds();
        Ok(unless(a == b, || format!("space {a}, poset {b}")))
    });
}

/// Directed families of up to three nonempty sets.
pub(crate) fn directed_families(p: &FinitePoset) -> Vec<Vec<Mask>> {
    small_families(p.len()).into_iter().filter(|f| is_directed_mask_family(p, f)).collect()
}

/// The property checks on bounds, way-below and directed families.
pub(crate) fn properties(s: &mut Sweep, c: &FiniteCtx, families: &[Vec<Mask>]) {
    let conv = c.conv;
    let n = c.n();
    let full: Mask = (1 << n) - 1;
    let p = &c.p;
    s.check("directed-sets-irreducible", "directed sets are irreducible", conv, || {
        for spec in INTRINSIC {
            let sp = Space::new(c.carrier.clone(), spec.clone().into(), conv)?;
            let fs = sp.finite().expect("finite carrier");
            if let Some(e) = nonempty_subsets(n).find(|&e| fs.order().is_directed(e) && !fs.is_irreducible(e)) {
                return Ok(Some(format!("{} under {}", c.name(e), spec.keyword())));
            }
        }
        Ok(None)
    });
    s.check("open-sets-upper", "open sets are upper and closed sets lower in the specialization order", conv, || {
        for spec in INTRINSIC {
            let sp = Space::new(c.carrier.clone(), spec.clone().into(), conv)?;
            let fs = sp.finite().expect("finite carrier");
            let q = fs.order();
            if let Some(&u) = fs.opens().iter().find(|&&u| !q.is_upper(u) || !q.is_lower(full & !u)) {
                return Ok(Some(format!("{} under {}", c.name(u), spec.keyword())));
            }
        }
        Ok(None)
    });
    let pairs = || nonempty_subsets(n).flat_map(move |g| nonempty_subsets(n).map(move |h| (g, h)));
    s.check("waybelow-pointwise", "G way below H iff G way below each point of H", conv, || {
        Ok(pairs()
            .find(|&(g, h)| c.below(g, h) != bits(h).all(|x| c.below(g, 1 << x)))
            .map(|(g, h)| format!("G = {}, H = {}", c.name(g), c.name(h))))
    });
    s.check("waybelow-up-closures", "G way below H iff the up-set of G is way below the up-set of H", conv, || {
        Ok(pairs()
            .find(|&(g, h)| c.below(g, h) != c.below(c.up(g), c.up(h)))
            .map(|(g, h)| format!("G = {}, H = {}", c.name(g), c.name(h))))
    });
    s.check("waybelow-up-inclusion", "G way below H implies the up-set of H is inside the up-set of G", conv, || {
        Ok(pairs()
            .find(|&(g, h)| c.below(g, h) && c.up(h) & !c.up(g) != 0)
            .map(|(g, h)| format!("G = {}, H = {}", c.name(g), c.name(h))))
    });
    s.check("waybelow-sandwich", "G <= H way below K <= M implies G way below M", conv, || {
        // Bit sets indexed by subsets: `lower[a]` holds every B with A <= B,
        // read as B inside the up-set of A.
        let lower: Vec<Mask> = (0..=full)
            .map(|a| nonempty_subsets(n).filter(|&b| b & !c.up(a) == 0).fold(0, |m, b| m | 1 << b))
            .collect();
        for g in nonempty_subsets(n) {
            let reach_k = bits(lower[g as usize]).fold(0, |m, h| m | c.wb[h]);
            let reach_m = bits(reach_k).fold(0, |m, k| m | lower[k]);
            if let Some(m) = bits(reach_m & !c.wb[g as usize]).next() {
                return Ok(Some(format!("G = {}, M = {}", c.name(g), c.name(m as Mask))));
            }
        }
        Ok(None)
    });
    s.check("finite-waybelow-is-membership", "on finite spaces F way below x iff x is in the up-set of F", conv, || {
        Ok(nonempty_subsets(n)
            .flat_map(|f| (0..n).map(move |x| (f, x)))
            .find(|&(f, x)| c.below(f, 1 << x) != (c.up(f) >> x & 1 == 1))
            .map(|(f, x)| format!("F = {}, x = {}", c.name(f), p.name(x))))
    });
    // `covered[f]` holds every G with F inside the up-set of G.
    let covered: Vec<Mask> = (0..=full)
        .map(|f| nonempty_subsets(n).filter(|&g| f & !c.up(g) == 0).fold(0, |m, g| m | 1 << g))
        .collect();
    s.check("directed-family-refines-waybelow", "a directed family meeting inside the up-set of x has a member inside the up-set of any G way below x", conv, || {
        for fam in families {
            let meet = fam.iter().fold(full, |m, &f| m & c.up(f));
            let cov = fam.iter().fold(0, |m, &f| m | covered[f as usize]);
            for x in (0..n).filter(|&x| meet & !p.up(x) == 0) {
                let wbx = nonempty_subsets(n).filter(|&g| c.below(g, 1 << x)).fold(0, |m, g| m | 1 << g);
                if let Some(g) = bits(wbx & !cov).next() {
                    return Ok(Some(format!("family {:?}, x = {}, G = {}", names(c, fam), p.name(x), c.name(g as Mask))));
                }
            }
        }
        Ok(None)
    });
    s.check("directed-family-enters-open", "a directed family meeting inside the up-set of x has a member inside each weakly irreducibly open U containing x", conv, || {
        let opens = si2::si2_opens(&c.space)?;
        let inside: Vec<Mask> = (0..=full)
            .map(|f| opens.iter().enumerate().filter(|&(_, &u)| f & !u == 0).fold(0, |m, (i, _)| m | 1 << i))
            .collect();
        let around: Vec<Mask> = (0..n)
            .map(|x| opens.iter().enumerate().filter(|&(_, &u)| u >> x & 1 == 1).fold(0, |m, (i, _)| m | 1 << i))
            .collect();
        for fam in families {
            let meet = fam.iter().fold(full, |m, &f| m & c.up(f));
            let entered = fam.iter().fold(0, |m, &f| m | inside[f as usize]);
            for x in (0..n).filter(|&x| meet & !p.up(x) == 0) {
                if let Some(i) = bits(around[x] & !entered).next() {
                    return Ok(Some(format!("family {:?}, x = {}, U = {}", names(c, fam), p.name(x), c.name(opens[i]))));
                }
            }
        }
        Ok(None)
    });
}

pub(crate) fn names(c: &FiniteCtx, fam: &[Mask]) -> Vec<String> {
    fam.iter().map(|&f| c.name(f)).collect()
}

fn sweep(inst: &Instance) -> Sweep {
    let mut s = Sweep::new(inst.label.clone());
    let families = directed_families(&inst.poset);
    for conv in DeltaConvention::BOTH {
        match FiniteCtx::new(&inst.poset, conv) {
            Ok(c) => {
                equivalences(&mut s, &c);
                properties(&mut s, &c, &families);
            }
            Err(e) => s.check("way-below-table", "way-below table is computable", conv, || Err(e)),
        }
    }
    s
}

pub(crate) fn run(params: SuiteParams) -> Report {
    let items = instances(params);
    suite_report("finite-equivalences", super::tally(sweep_all(&items, sweep)))
}
