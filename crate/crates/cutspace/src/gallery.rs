//! The three worked examples: a point above the first point of an ω-chain,
//! the cofinite topology on a countable set, and an ω-chain with a top and an
//! isolated point `z` below the top.

use cutspace_core::continuity;
use cutspace_core::convergence::{self, NetPresentation, Strand};
use cutspace_core::order;
use cutspace_core::si2;
use cutspace_core::waybelow::{self, WxDescription};
use cutspace_core::{DeltaConvention, ElementRef, Error, SetExpr, Space, Topology, TopologySpec};
use serde_json::json;

use crate::checks::conditions_json;
use crate::dsl::{parse, resolve};
use crate::report::{family_json, set_json, Check, Report};

pub const EXAMPLES: [&str; 3] = ["ex-omega", "ex-cofinite", "ex-topz"];

/// DSL source of each example.
pub fn source(name: &str) -> Option<&'static str> {
    match name {
        "ex-omega" => Some(
            "# a sits above c_0 only\n\
             omegaposet W { finite: a; attach: a abovePrefix(0); }\n\
             space S = alexandroff(W);\n",
        ),
        "ex-cofinite" => Some("antichain A omega;\nspace S = cofinite(A);\n"),
        "ex-topz" => Some(
            "# c_0 < c_1 < ... < top, z < top\n\
             omegaposet W { finite: top, z; order: z < top; attach: top aboveAll; attach: z incomparable; }\n\
             space S = alexandroff(W);\n\
             net N over S { strands: chainCofinal(0), constant(z); }\n",
        ),
        _ => None,
    }
}

fn space(name: &str, conv: DeltaConvention) -> Space {
    let doc = resolve(&parse(source(name).expect("known example")).expect("example parses")).expect("resolves");
    doc.spaces["S"].space(conv).expect("example space is valid")
}

fn qc(s: &Space, c: Check, expected: bool) -> Check {
    c.expect(expected).timed(|c| {
        let r = continuity::is_si2_quasicontinuous(s)?;
        Ok(c.verdict(r.holds()).witness(conditions_json(s.carrier(), &r)))
    })
}

fn cont(s: &Space, c: Check, expected: bool) -> Check {
    c.expect(expected).timed(|c| {
        let r = continuity::is_si2_continuous(s)?;
        Ok(c.verdict(r.holds()).witness(conditions_json(s.carrier(), &r)))
    })
}

pub fn ex_omega() -> Report {
    let conv = DeltaConvention::StandardCut;
    let s = space("ex-omega", conv);
    let a = ElementRef::Named(0);
    let mut r = Report::new("ex-omega", conv.as_str());
    r.push(qc(&s, Check::new("si2-quasicontinuous", "quasicontinuous but not continuous", conv), true));
    r.push(cont(&s, Check::new("si2-continuous", "quasicontinuous but not continuous", conv), false));
    r.push(Check::new("s2-quasicontinuous", "Alexandroff reduction mirrors the space verdict", conv).timed(|c| {
        Ok(c.verdict(continuity::is_s2_quasicontinuous(s.carrier(), conv)?.holds()))
    }));
    r.push(
        Check::new("s2-continuous", "Alexandroff reduction mirrors the space verdict", conv)
            .expect(false)
            .timed(|c| Ok(c.verdict(continuity::is_s2_continuous(s.carrier(), conv)?.holds()))),
    );
    r.push(Check::new("way-below set of a is {@0}", "only c_0 is way below a", conv).timed(|c| {
        let dd = waybelow::dd_r(&s, a)?;
        Ok(c.verdict(dd == SetExpr::point(ElementRef::Indexed(0))).witness(set_json(s.carrier(), &dd)))
    }));
    r.push(
        Check::new("{a} weakly irreducibly open", "the chain's cut is everything and misses {a}", conv)
            .expect(false)
            .timed(|c| Ok(c.verdict(si2::is_weakly_irreducibly_open(&s, &SetExpr::point(a))?))),
    );
    r
}

pub fn ex_cofinite() -> Report {
    let mut r = Report::new("ex-cofinite", "both");
    let x = ElementRef::Indexed(0);
    for conv in DeltaConvention::BOTH {
        let s = space("ex-cofinite", conv);
        r.push(Check::new("s2-continuous", "the discrete order is s2-continuous", conv).timed(|c| {
            Ok(c.verdict(continuity::is_s2_continuous(s.carrier(), conv)?.holds()))
        }));
        r.push(qc(&s, Check::new("si2-quasicontinuous", "the cofinite space is not quasicontinuous", conv), false));
        let uu = waybelow::uu_r(&s, &SetExpr::point(x));
        let check = match conv {
            DeltaConvention::EmptyCut => {
                Check::new("way-above set of a point is itself and not open", "way-above set {x} is not open", conv)
                    .timed(|c| {
                        let uu = uu.clone()?;
                        let open = cutspace_core::space::is_open(&s, &uu)?;
                        Ok(c.verdict(uu == SetExpr::point(x) && !open).witness(set_json(s.carrier(), &uu)))
                    })
            }
            DeltaConvention::StandardCut => Check::new(
                "way-above set of a point is empty",
                "every infinite set has the whole space as cut",
                conv,
            )
            .timed(|c| {
                let uu = uu.clone()?;
                Ok(c.verdict(uu.is_empty()).witness(set_json(s.carrier(), &uu)))
            }),
        };
        r.push(check);
    }
    r
}

/// `∩{↑{z, c_n} : n <= 20}` and the limit of the whole family.
fn stabilized_meet(s: &Space) -> cutspace_core::Result<(SetExpr, SetExpr)> {
    let z = ElementRef::Named(1);
    let carrier = s.carrier();
    let mut acc = SetExpr::whole(carrier);
    for n in 0..=20 {
        acc = acc.intersection(&order::up_closure(carrier, &SetExpr::points([z, ElementRef::Indexed(n)]))?);
    }
    let limit = continuity::family_meet(carrier, &WxDescription::Parametric { base: SetExpr::point(z), from: 0 })?;
    Ok((acc, limit))
}

pub fn ex_topz() -> Report {
    let conv = DeltaConvention::StandardCut;
    let s = space("ex-topz", conv);
    let carrier = s.carrier().clone();
    let z = ElementRef::Named(1);
    let zs = SetExpr::point(z);
    let net = NetPresentation::new(&carrier, vec![Strand::ChainCofinal(0), Strand::Constant(z)])
        .expect("alternating net is valid");
    let mut r = Report::new("ex-topz", conv.as_str());
    r.push(qc(&s, Check::new("si2-quasicontinuous", "quasicontinuous but not continuous", conv), true));
    r.push(cont(&s, Check::new("si2-continuous", "quasicontinuous but not continuous", conv), false));
    r.push(Check::new("{z, @n} way below z for n = 0..20", "{z, n} is way below z", conv).timed(|c| {
        let mut ok = true;
        for n in 0..=20 {
            ok &= waybelow::waybelow_r(&s, &SetExpr::points([z, ElementRef::Indexed(n)]), &zs)?;
        }
        Ok(c.verdict(ok))
    }));
    r.push(
        Check::new("{z} way below z", "z alone is not way below z", conv)
            .expect(false)
            .timed(|c| Ok(c.verdict(waybelow::waybelow_r(&s, &zs, &zs)?))),
    );
    r.push(Check::new("meet of up-sets of {z, @n} is the up-set of z", "up-sets of {z, n} shrink to {z, top}", conv).timed(
        |c| {
            let (acc, limit) = stabilized_meet(&s)?;
            let up_z = order::principal_up(&carrier, z);
            let named_stable = SetExpr::from_mask(acc.named_mask()) == up_z;
            Ok(c.verdict(named_stable && limit == up_z).witness(json!({
                "first_21": set_json(&carrier, &acc),
                "limit": set_json(&carrier, &limit),
            })))
        },
    ));
    r.push(Check::new("w(z) is the family {z, @n}", "w(z) is parametric and directed", conv).timed(|c| {
        let w = waybelow::w_of(&s, z)?;
        let ok = w.directed && w.description == WxDescription::Parametric { base: zs.clone(), from: 0 };
        Ok(c.verdict(ok).witness(family_json(&carrier, &w.description)))
    }));
    r.push(Check::new("z is a GD-limit", "z is a GD-limit of the alternating net", conv).timed(|c| {
        let w = convergence::gd_witness(&s, &net, z)?.ok_or(Error::InternalFailure("no witness".into()));
        let w = w?;
        let valid = convergence::check_family_witness(&s, &net, z, &w)?;
        Ok(c.verdict(valid).witness(family_json(&carrier, &w)))
    }));
    r.push(
        Check::new("z is a D-limit", "z is not a D-limit of the alternating net", conv)
            .expect(false)
            .timed(|c| Ok(c.verdict(convergence::d_limits(&s, &net)?.set.contains(z)))),
    );
    r.push(Check::new("z is a weakly irreducible limit", "GD-limits are the weakly irreducible limits", conv).timed(|c| {
        let l = convergence::topological_limits(&s, &net, &Topology::si2(TopologySpec::Alexandroff.into()))?;
        Ok(c.verdict(l.contains(z)).witness(set_json(&carrier, &l)))
    }));
    r.push(
        Check::new("z is an Alexandroff limit", "the up-set of z is open and misses the chain", conv)
            .expect(false)
            .timed(|c| {
                let l = convergence::topological_limits(&s, &net, &TopologySpec::Alexandroff.into())?;
                Ok(c.verdict(l.contains(z)).witness(set_json(&carrier, &l)))
            }),
    );
    r.push(Check::new("convergence agreement", "GD-limits are the weakly irreducible limits", conv).timed(|c| {
        let k = convergence::convergence_check(&s, std::slice::from_ref(&net))?;
        Ok(c.verdict(k.agree() && k.consistent()))
    }));
    r
}

pub fn run(name: &str) -> Option<Report> {
    match name {
        "ex-omega" => Some(ex_omega()),
        "ex-cofinite" => Some(ex_cofinite()),
        "ex-topz" => Some(ex_topz()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_example_passes() {
        for name in EXAMPLES {
            let r = run(name).unwrap();
            assert!(r.all_pass() && r.summary.unknown == 0, "{}", r.to_text());
        }
    }
}
