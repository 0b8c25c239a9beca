//! How the two cut conventions differ.
//!
//! On finite posets nonempty directed and irreducible sets have upper
//! bounds, so the conventions only part ways on sets without upper bounds
//! and every verdict must coincide. On the symbolic examples they do part
//! ways, and the expected verdicts are recorded per convention.

use cutspace_core::continuity;
use cutspace_core::order;
use cutspace_core::space::is_open;
use cutspace_core::waybelow;
use cutspace_core::{Carrier, DeltaConvention, ElementRef, SetExpr, Space};

use super::finite::FiniteCtx;
use super::{instances, suite_report, sweep_all, tally, unless, Instance, SuiteParams, Sweep};
use crate::report::{Check, Report};

const STD: DeltaConvention = DeltaConvention::StandardCut;
const EMPTY: DeltaConvention = DeltaConvention::EmptyCut;

fn verdicts(c: &FiniteCtx) -> cutspace_core::Result<[bool; 4]> {
    Ok([
        continuity::is_si2_quasicontinuous(&c.space)?.holds(),
        continuity::is_si2_continuous(&c.space)?.holds(),
        continuity::is_s2_quasicontinuous(&c.carrier, c.conv)?.holds(),
        continuity::is_s2_continuous(&c.carrier, c.conv)?.holds(),
    ])
}

fn sweep(inst: &Instance) -> Sweep {
    let p = &inst.poset;
    let mut s = Sweep::new(inst.label.clone());
    s.check("finite-verdicts-convention-free", "continuity verdicts and way-below tables agree under both conventions", STD, || {
        let a = FiniteCtx::new(p, STD)?;
        let b = FiniteCtx::new(p, EMPTY)?;
        if a.wb != b.wb {
            return Ok(Some("way-below tables differ".into()));
        }
        let (va, vb) = (verdicts(&a)?, verdicts(&b)?);
        Ok(unless(va == vb, || format!("standard {va:?}, empty {vb:?}")))
    });
    let carrier = Carrier::Finite(p.clone());
    for conv in DeltaConvention::BOTH {
        s.check("cut-contains-bounded-set", "a set with upper bounds lies in its cut; an unbounded one has cut all or nothing", conv, || {
            let full = p.full();
            for a in 0..=full {
                let cut = order::cut(&carrier, &SetExpr::from_mask(a), conv)?.named_mask();
                let ok = if p.upper_bounds(a) != 0 {
                    a & !cut == 0 && cut == p.lower_bounds(p.upper_bounds(a))
                } else {
                    cut == if conv == STD { full } else { 0 }
                };
                if !ok {
                    return Ok(Some(format!("A = {a:#b}, cut = {cut:#b}")));
                }
            }
            Ok(None)
        });
    }
    s
}

fn space(src: &str, conv: DeltaConvention) -> Space {
    let doc = crate::dsl::resolve(&crate::dsl::parse(src).expect("parses")).expect("resolves");
    doc.spaces["S"].space(conv).expect("valid")
}

const OMEGA_UPPER: &str = "omegaposet W { finite: a; attach: a abovePrefix(0); }\nspace S = upper(W);\n";

/// Verdicts on the symbolic examples that depend on the convention.
fn symbolic_checks() -> Vec<Check> {
    let mut out = Vec::new();
    let source = |n| crate::gallery::source(n).expect("known example");
    for (conv, expected) in [(STD, false), (EMPTY, true)] {
        let s = space(source("ex-omega"), conv);
        out.push(
            Check::new("ex-omega si2-continuous", "the chain's cut holds a under the standard convention only", conv)
                .expect(expected)
                .timed(|c| Ok(c.verdict(continuity::is_si2_continuous(&s)?.holds()))),
        );
    }
    for (conv, expected) in [(STD, true), (EMPTY, false)] {
        let s = space(OMEGA_UPPER, conv);
        out.push(
            Check::new("ex-omega upper si2-quasicontinuous", "upper topology verdict follows the chain's cut", conv)
                .expect(expected)
                .timed(|c| Ok(c.verdict(continuity::is_si2_quasicontinuous(&s)?.holds()))),
        );
    }
    for conv in DeltaConvention::BOTH {
        let s = space(source("ex-cofinite"), conv);
        let x = SetExpr::point(ElementRef::Indexed(0));
        let expected = if conv == STD { SetExpr::empty() } else { x.clone() };
        out.push(
            Check::new("ex-cofinite way-above set of a point", "empty under the standard convention, the point itself otherwise", conv)
                .timed(|c| {
                    let uu = waybelow::uu_r(&s, &x)?;
                    let open = is_open(&s, &uu)?;
                    Ok(c.verdict(uu == expected && open == (conv == STD))
                        .witness(crate::report::set_json(s.carrier(), &uu)))
                }),
        );
        out.push(
            Check::new("ex-cofinite si2-quasicontinuous", "not quasicontinuous under either convention", conv)
                .expect(false)
                .timed(|c| Ok(c.verdict(continuity::is_si2_quasicontinuous(&s)?.holds()))),
        );
    }
    // The cut of an unbounded pair, from a three-point poset.
    let vee = crate::dsl::resolve(
        &crate::dsl::parse("poset V { elements: b, x, y; order: b < x, b < y; }").expect("parses"),
    )
    .expect("resolves")
    .carriers["V"]
        .clone();
    for conv in DeltaConvention::BOTH {
        let pair = SetExpr::from_mask(0b110);
        let expected = if conv == STD { SetExpr::from_mask(0b111) } else { SetExpr::empty() };
        out.push(Check::new("cut of an unbounded pair", "whole carrier or empty by convention", conv).timed(|c| {
            Ok(c.verdict(order::cut(&vee, &pair, conv)? == expected))
        }));
    }
    out
}

pub(crate) fn run(params: SuiteParams) -> Report {
    let items = instances(params);
    let mut checks = tally(sweep_all(&items, sweep));
    checks.extend(symbolic_checks());
    suite_report("convention-duality", checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Verdict;

    #[test]
    fn small_sweep_passes() {
        let r = run(SuiteParams { max_n: 3, seed: 0, samples: 0 });
        assert!(r.all_pass() && r.summary.unknown == 0, "{}", r.to_text());
        assert!(r.checks.iter().any(|c| c.verdict == Verdict::False));
    }
}
