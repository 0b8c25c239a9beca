//! Witnesses for directed families of finite sets: a directed subset of the
//! union meeting every member.

use cutspace_core::finite::{bits, Mask};
use cutspace_core::order::{is_directed_mask_family, rudin_witness};
use cutspace_core::{Carrier, DeltaConvention, Error, FinitePoset, SetExpr};

use super::{instances, small_families, suite_report, sweep_all, tally, Instance, SuiteParams, Sweep};
use crate::report::Report;

/// Directedness from the definition: nonempty, and any two points have an
/// upper bound inside the set.
fn directed(p: &FinitePoset, d: Mask) -> bool {
    d != 0 && bits(d).all(|a| bits(d).all(|b| bits(d).any(|c| p.leq(a, c) && p.leq(b, c))))
}

fn meets_all(fam: &[Mask], d: Mask) -> bool {
    fam.iter().all(|&f| f & d != 0)
}

fn label(p: &FinitePoset, fam: &[Mask]) -> String {
    let sets: Vec<String> = fam
        .iter()
        .map(|&f| format!("{{{}}}", bits(f).map(|i| p.name(i)).collect::<Vec<_>>().join(",")))
        .collect();
    sets.join(" ")
}

fn sweep(inst: &Instance) -> Sweep {
    let p = &inst.poset;
    let carrier = Carrier::Finite(p.clone());
    let mut s = Sweep::new(inst.label.clone());
    let conv = DeltaConvention::StandardCut;
    let fams = small_families(p.len());
    let (dir, other): (Vec<&Vec<Mask>>, Vec<&Vec<Mask>>) = fams.iter().partition(|f| is_directed_mask_family(p, f));
    s.check("rudin-witness-valid", "a directed family has a directed subset of its union meeting every member", conv, || {
        for fam in &dir {
            let sets: Vec<SetExpr> = fam.iter().map(|&f| SetExpr::from_mask(f)).collect();
            let d = rudin_witness(&carrier, &sets)?.named_mask();
            let union = fam.iter().fold(0, |m, &f| m | f);
            if d & !union != 0 || !meets_all(fam, d) || !directed(p, d) {
                return Ok(Some(format!("{} gave invalid {d:#b}", label(p, fam))));
            }
            // Smallest first: nothing smaller inside the union works.
            let k = d.count_ones();
            let mut sub = union;
            while sub != 0 {
                if sub.count_ones() < k && meets_all(fam, sub) && directed(p, sub) {
                    return Ok(Some(format!("{} has a smaller witness {sub:#b}", label(p, fam))));
                }
                sub = (sub - 1) & union;
            }
        }
        Ok(None)
    });
    s.check("rudin-rejects-undirected", "families that are not directed are rejected", conv, || {
        for fam in &other {
            let sets: Vec<SetExpr> = fam.iter().map(|&f| SetExpr::from_mask(f)).collect();
            match rudin_witness(&carrier, &sets) {
                Err(Error::NotDirectedFamily) => {}
                r => return Ok(Some(format!("{} gave {r:?}", label(p, fam)))),
            }
        }
        Ok(None)
    });
    s
}

pub(crate) fn run(params: SuiteParams) -> Report {
    let items = instances(params);
    suite_report("rudin", tally(sweep_all(&items, sweep)))
}
