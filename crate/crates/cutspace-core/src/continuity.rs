//! The continuity verdicts: s₂-continuity and s₂-quasicontinuity of a poset,
//! SI₂-continuity and SI₂-quasicontinuity of a space.

use alloc::vec::Vec;

use crate::carrier::{Carrier, ElementRef};
use crate::error::Result;
use crate::order::{self, DeltaConvention};
use crate::setexpr::SetExpr;
use crate::space::{self, Space};
use crate::waybelow::{self, finite_templates, horizon, Approx, WxDescription};

/// Something a failed condition was checked at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Point(ElementRef),
    Set(SetExpr),
}

/// One defining condition and where it first failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub label: &'static str,
    pub holds: bool,
    pub counterexample: Option<Witness>,
}

/// Per-condition outcomes of a verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conditions(pub Vec<Condition>);

impl Conditions {
    pub fn holds(&self) -> bool {
        self.0.iter().all(|c| c.holds)
    }

    /// First failing condition.
    pub fn first_failure(&self) -> Option<&Condition> {
        self.0.iter().find(|c| !c.holds)
    }
}

struct Tracker {
    conds: Vec<Condition>,
}

impl Tracker {
    fn new(labels: &[&'static str]) -> Self {
        Self {
            conds: labels
                .iter()
                .map(|&label| Condition { label, holds: true, counterexample: None })
                .collect(),
        }
    }

    fn record(&mut self, i: usize, ok: bool, at: impl FnOnce() -> Witness) {
        let c = &mut self.conds[i];
        if !ok && c.holds {
            c.holds = false;
            c.counterexample = Some(at());
        }
    }

    fn finish(self) -> Conditions {
        Conditions(self.conds)
    }
}

/// Points standing for every point of the carrier: all named points, and
/// indexed points up to `horizon` (later ones behave like the last).
pub fn representative_points(carrier: &Carrier, horizon: usize) -> Vec<ElementRef> {
    let named = (0..carrier.named_len()).map(ElementRef::Named);
    let indexed = (0..=horizon)
        .filter(|_| carrier.has_indexed())
        .map(ElementRef::Indexed);
    named.chain(indexed).collect()
}

/// `∩{↑F : F in the family}`; the empty family intersects to the whole carrier.
pub fn family_meet(carrier: &Carrier, family: &WxDescription) -> Result<SetExpr> {
    match family {
        WxDescription::Empty => Ok(SetExpr::whole(carrier)),
        WxDescription::Explicit(v) => {
            let mut acc = SetExpr::whole(carrier);
            for f in v {
                acc = acc.intersection(&order::up_closure(carrier, f)?);
            }
            Ok(acc)
        }
        // ↑c_n decreases to the points above the whole chain.
        WxDescription::Parametric { base, .. } => {
            let omega = match carrier {
                Carrier::OmegaGlued(o) => SetExpr::from_mask(o.above_chain()),
                _ => SetExpr::empty(),
            };
            Ok(order::up_closure(carrier, base)?.union(&omega))
        }
    }
}

/// Conditions (1) and (2) shared by both quasicontinuity notions.
fn quasi_points(approx: &Approx, t: &mut Tracker, points: &[ElementRef]) -> Result<()> {
    let carrier = approx.carrier();
    for &x in points {
        let w = approx.w(x)?;
        t.record(0, w.directed, || Witness::Point(x));
        let meet = family_meet(carrier, &w.description)?;
        t.record(1, meet == order::principal_up(carrier, x), || Witness::Point(x));
    }
    Ok(())
}

/// `w(x)` directed, `↑x = ∩{↑F : F ∈ w(x)}`, and `⇑_r H` open for finite `H`.
pub fn is_si2_quasicontinuous(space: &Space) -> Result<Conditions> {
    let carrier = space.carrier();
    let h = horizon(carrier, &[]);
    let mut t = Tracker::new(&["w(x) directed", "up-set is the meet of w(x)", "way-above sets open"]);
    let approx = Approx::Irreducible(space);
    quasi_points(&approx, &mut t, &representative_points(carrier, h))?;
    for hs in finite_templates(carrier, h) {
        let uu = waybelow::uu_r(space, &hs)?;
        let open = space::is_open(space, &uu)?;
        t.record(2, open, || Witness::Set(hs.clone()));
        if !open {
            break;
        }
    }
    Ok(t.finish())
}

/// `⇓_r x` directed, `x ∈ (⇓_r x)^δ`, `⇑_r x` open.
pub fn is_si2_continuous(space: &Space) -> Result<Conditions> {
    let carrier = space.carrier();
    let h = horizon(carrier, &[]);
    let mut t = Tracker::new(&["way-below set directed", "point in the cut of its way-below set", "way-above set open"]);
    for x in representative_points(carrier, h) {
        let dd = waybelow::dd_r(space, x)?;
        t.record(0, order::is_directed(carrier, &dd)?, || Witness::Point(x));
        let cut = order::cut(carrier, &dd, space.convention())?;
        t.record(1, cut.contains(x), || Witness::Point(x));
        let uu = waybelow::uu_r(space, &SetExpr::point(x))?;
        t.record(2, space::is_open(space, &uu)?, || Witness::Point(x));
    }
    Ok(t.finish())
}

/// `x ∈ (⇓x)^δ` and `⇓x` directed, with ≪ over directed sets.
pub fn is_s2_continuous(carrier: &Carrier, convention: DeltaConvention) -> Result<Conditions> {
    let approx = Approx::directed(carrier, convention);
    let mut t = Tracker::new(&["way-below set directed", "point in the cut of its way-below set"]);
    for x in representative_points(carrier, horizon(carrier, &[])) {
        let dd = approx.down_of(x)?;
        t.record(0, order::is_directed(carrier, &dd)?, || Witness::Point(x));
        let cut = order::cut(carrier, &dd, convention)?;
        t.record(1, cut.contains(x), || Witness::Point(x));
    }
    Ok(t.finish())
}

/// `↑x = ∩{↑F : F finite, F ≪ x}` with that family directed.
pub fn is_s2_quasicontinuous(carrier: &Carrier, convention: DeltaConvention) -> Result<Conditions> {
    let approx = Approx::directed(carrier, convention);
    let mut t = Tracker::new(&["w(x) directed", "up-set is the meet of w(x)"]);
    quasi_points(&approx, &mut t, &representative_points(carrier, horizon(carrier, &[])))?;
    Ok(t.finish())
}
