//! Evaluation of `check` directives.

use cutspace_core::continuity::{self, Conditions, Witness};
use cutspace_core::convergence::{self, NetPresentation};
use cutspace_core::si2;
use cutspace_core::{waybelow, Carrier, DeltaConvention, Space, Topology};
use serde_json::{json, Value};

use crate::dsl::{CheckKind, ResolvedCheck, ResolvedDocument};
use crate::report::{limit_witness_json, point_json, set_json, Check, Report, Verdict};

fn anchor(kind: CheckKind) -> &'static str {
    match kind {
        CheckKind::Si2Quasicontinuous => "w(x) directed; up-set of x is the meet of w(x); way-above sets of finite sets open",
        CheckKind::Si2Continuous => "way-below set directed with x in its cut; way-above set of x open",
        CheckKind::S2Continuous => "x in the cut of its directed way-below set",
        CheckKind::S2Quasicontinuous => "up-set of x is the meet of the directed family of finite sets way below x",
        CheckKind::QuasicontinuityEquivalence => {
            "quasicontinuity, open interpolation and hypercontinuity of the open-set lattice agree"
        }
        CheckKind::Si2Topology => "weakly irreducibly open sets form a topology",
        CheckKind::Waybelow => "every irreducible set whose cut meets B meets the up-set of A",
        CheckKind::DLimits => "directed set of eventual lower bounds with the point in its cut",
        CheckKind::GdLimits => "directed family of quasi-eventual lower bounds meeting inside the up-set",
        CheckKind::Si2Limits => "every weakly irreducibly open neighbourhood eventually contains the net",
        CheckKind::ConvergenceAgreement => {
            "GD-convergence agrees with convergence in the weakly irreducible topology"
        }
    }
}

/// Per-condition outcomes and the first counterexample.
pub fn conditions_json(carrier: &Carrier, c: &Conditions) -> Value {
    let conds: Vec<Value> = c
        .0
        .iter()
        .map(|k| {
            let at = k.counterexample.as_ref().map(|w| match w {
                Witness::Point(x) => point_json(carrier, *x),
                Witness::Set(s) => set_json(carrier, s),
            });
            json!({ "condition": k.label, "holds": k.holds, "counterexample": at })
        })
        .collect();
    Value::Array(conds)
}

fn verdict_check(c: Check, carrier: &Carrier, conds: Conditions) -> Check {
    let v = conds.holds();
    c.verdict(v).witness(conditions_json(carrier, &conds))
}

fn net_check(doc: &ResolvedDocument, rc: &ResolvedCheck, conv: DeltaConvention) -> cutspace_core::Result<(Space, NetPresentation)> {
    let (space, net) = &doc.nets[&rc.target];
    Ok((doc.spaces[space].space(conv)?, net.clone()))
}

/// Runs one directive under one convention.
pub fn run_check(doc: &ResolvedDocument, rc: &ResolvedCheck, conv: DeltaConvention) -> Check {
    let name = format!("{} {}", rc.kind.keyword(), rc.target);
    Check::new(name, anchor(rc.kind), conv).timed(|c| {
        let space_of = || doc.spaces[&rc.target].space(conv);
        Ok(match rc.kind {
            CheckKind::Si2Quasicontinuous => {
                let s = space_of()?;
                verdict_check(c, s.carrier(), continuity::is_si2_quasicontinuous(&s)?)
            }
            CheckKind::Si2Continuous => {
                let s = space_of()?;
                verdict_check(c, s.carrier(), continuity::is_si2_continuous(&s)?)
            }
            CheckKind::S2Continuous => {
                let s = space_of()?;
                verdict_check(c, s.carrier(), continuity::is_s2_continuous(s.carrier(), conv)?)
            }
            CheckKind::S2Quasicontinuous => {
                let s = space_of()?;
                verdict_check(c, s.carrier(), continuity::is_s2_quasicontinuous(s.carrier(), conv)?)
            }
            CheckKind::QuasicontinuityEquivalence => {
                let s = space_of()?;
                let q = si2::quasicontinuity_check(&s)?;
                c.verdict(q.agree()).witness(json!({
                    "quasicontinuous": q.quasicontinuous,
                    "interpolation": q.interpolation,
                    "hypercontinuous": q.hypercontinuous,
                }))
            }
            CheckKind::Si2Topology => {
                let s = space_of()?;
                let t = si2::si2_topology(&s)?;
                let opens: Vec<Value> = t
                    .finite()
                    .expect("finite")
                    .opens()
                    .iter()
                    .map(|&m| set_json(s.carrier(), &cutspace_core::SetExpr::from_mask(m)))
                    .collect();
                c.verdict(true).witness(Value::Array(opens))
            }
            CheckKind::Waybelow => {
                let s = space_of()?;
                let v = waybelow::waybelow_r(&s, &rc.args[0], &rc.args[1])?;
                c.verdict(v)
            }
            CheckKind::DLimits => {
                let (s, net) = net_check(doc, rc, conv)?;
                let l = convergence::d_limits(&s, &net)?;
                let ws: Vec<Value> = l
                    .witnesses
                    .iter()
                    .map(|(x, w)| json!({ "point": point_json(s.carrier(), *x), "witness": limit_witness_json(s.carrier(), w) }))
                    .collect();
                c.verdict(true).witness(json!({ "limits": set_json(s.carrier(), &l.set), "witnesses": ws }))
            }
            CheckKind::GdLimits => {
                let (s, net) = net_check(doc, rc, conv)?;
                let g = convergence::gd_limits(&s, &net)?;
                let points: Vec<Value> = g
                    .verdicts
                    .iter()
                    .map(|v| {
                        json!({
                            "point": point_json(s.carrier(), v.point),
                            "limit": Verdict::from(v.status()).as_str(),
                            "witness": v.witness.as_ref().map(|f| crate::report::family_json(s.carrier(), f)),
                            "topological": v.topological,
                        })
                    })
                    .collect();
                let limits = g.set.as_ref().map(|l| set_json(s.carrier(), l));
                let c = c.verdict(Verdict::from(g.set.is_some().then_some(true)));
                let c = if g.set.is_none() { c.note("some points are undecided") } else { c };
                c.witness(json!({ "limits": limits, "points": points }))
            }
            CheckKind::Si2Limits => {
                let (s, net) = net_check(doc, rc, conv)?;
                let l = convergence::topological_limits(&s, &net, &Topology::si2(s.topology().clone()))?;
                c.verdict(true).witness(json!({ "limits": set_json(s.carrier(), &l) }))
            }
            CheckKind::ConvergenceAgreement => {
                let (s, net) = net_check(doc, rc, conv)?;
                let r = convergence::convergence_check(&s, std::slice::from_ref(&net))?;
                let mism: Vec<Value> = r.mismatches().map(|m| point_json(s.carrier(), m.point)).collect();
                let c = c.verdict(r.agree()).witness(json!({ "quasicontinuous": r.quasicontinuous, "mismatches": mism }));
                if r.undecided().next().is_some() { c.note("some points are undecided by witness search") } else { c }
            }
        })
    })
}

/// Every directive under every convention the document asks for.
pub fn run_document(doc: &ResolvedDocument, instance: &str) -> Report {
    let mut r = Report::new(instance, doc.convention.keyword());
    for rc in &doc.checks {
        for &conv in doc.convention.conventions() {
            r.push(run_check(doc, rc, conv));
        }
    }
    r
}
