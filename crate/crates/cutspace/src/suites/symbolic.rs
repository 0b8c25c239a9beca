//! The worked examples, the Alexandroff reduction on glued carriers, and
//! agreement between the glued case tables and finite truncations.

use cutspace_core::continuity;
use cutspace_core::finite::{bits, Mask};
use cutspace_core::order::{self, truncate, truncate_set};
use cutspace_core::space::{self, tail_cut};
use cutspace_core::waybelow;
use cutspace_core::{Attachment, Carrier, DeltaConvention, ElementRef, OmegaPoset, SetExpr, Space};

use super::{suite_report, sweep_all, tally, SuiteParams, Sweep};
use crate::gallery;
use crate::report::{Check, Report};

const ATTACHMENTS: [Attachment; 6] = [
    Attachment::AboveAll,
    Attachment::AbovePrefix(0),
    Attachment::AbovePrefix(1),
    Attachment::BelowIndex(0),
    Attachment::BelowIndex(1),
    Attachment::Incomparable,
];

/// Glued carriers with one or two named points: every attachment of a single
/// point, and every consistent pair of attachments with or without `p0 < p1`.
pub(crate) fn glued_carriers() -> Vec<(String, Carrier)> {
    let mut out = Vec::new();
    let names = |k: usize| (0..k).map(|i| format!("p{i}")).collect::<Vec<_>>();
    for a in ATTACHMENTS {
        if let Ok(o) = OmegaPoset::new(names(1), &[], vec![a]) {
            out.push((format!("p0 {a:?}"), Carrier::OmegaGlued(o)));
        }
    }
    for ordered in [false, true] {
        let pairs: &[(usize, usize)] = if ordered { &[(0, 1)] } else { &[] };
        for a in ATTACHMENTS {
            for b in ATTACHMENTS {
                if let Ok(o) = OmegaPoset::new(names(2), pairs, vec![a, b]) {
                    let rel = if ordered { "p0<p1" } else { "p0,p1" };
                    out.push((format!("{rel} {a:?} {b:?}"), Carrier::OmegaGlued(o)));
                }
            }
        }
    }
    out
}

/// Subsets of the truncation to `n` chain points whose chain indices are
/// below `n - 1`, as sets of the glued carrier.
fn finite_arguments(carrier: &Carrier, n: usize) -> Vec<SetExpr> {
    let nf = carrier.named_len();
    let mut out = Vec::new();
    for named in 0..(1 as Mask) << nf {
        for chain in 0..(1 as Mask) << (n - 1) {
            if named | chain != 0 {
                out.push(SetExpr::from_parts(named, bits(chain), None));
            }
        }
    }
    out
}

/// Finite arguments and tails starting below `n - 1`.
fn all_arguments(carrier: &Carrier, n: usize) -> Vec<SetExpr> {
    let mut out = finite_arguments(carrier, n);
    let nf = carrier.named_len();
    for k in 0..n - 1 {
        for named in 0..(1 as Mask) << nf {
            out.push(SetExpr::from_parts(named, [], Some(k)));
        }
    }
    out
}

fn coherence(label: &str, carrier: &Carrier, n: usize) -> Sweep {
    let mut s = Sweep::new(format!("{label} truncated at {n}"));
    let std = DeltaConvention::StandardCut;
    let empty = DeltaConvention::EmptyCut;
    let t = match truncate(carrier, n) {
        Ok(t) => t,
        Err(e) => {
            s.check("truncation", "truncations are posets", std, || Err(e));
            return s;
        }
    };
    let tc = Carrier::Finite(t.clone());
    let args = all_arguments(carrier, n);
    let tr = |a: &SetExpr| truncate_set(carrier, a, n);
    let shown = |a: &SetExpr| a.display(carrier).to_string();
    let pts: Vec<ElementRef> = (0..carrier.named_len())
        .map(ElementRef::Named)
        .chain((0..n).map(ElementRef::Indexed))
        .collect();
    s.check("truncation-order", "order agrees with the truncation", std, || {
        for (i, &x) in pts.iter().enumerate() {
            for (j, &y) in pts.iter().enumerate() {
                if order::leq(carrier, x, y)? != t.leq(i, j) {
                    return Ok(Some(format!("{} <= {}", carrier.display(x), carrier.display(y))));
                }
            }
        }
        Ok(None)
    });
    s.check("truncation-closures", "up- and down-closures agree with the truncation", std, || {
        for a in &args {
            let up = tr(&order::up_closure(carrier, a)?);
            let down = tr(&order::down_closure(carrier, a)?);
            if up != t.up_closure(tr(a)) || down != t.down_closure(tr(a)) {
                return Ok(Some(shown(a)));
            }
        }
        Ok(None)
    });
    s.check("truncation-directedness", "directedness agrees with the truncation", std, || {
        for a in &args {
            if order::is_directed(carrier, a)? != t.is_directed(tr(a)) {
                return Ok(Some(shown(a)));
            }
        }
        Ok(None)
    });
    s.check("truncation-irreducibility", "irreducibility in the Alexandroff topology agrees with the truncation", std, || {
        let sp = Space::alexandroff(carrier.clone(), std)?;
        let ts = Space::alexandroff(tc.clone(), std)?;
        let fs = ts.finite().expect("finite");
        for a in &args {
            if space::is_irreducible(&sp, a)? != fs.is_irreducible(tr(a)) {
                return Ok(Some(shown(a)));
            }
        }
        Ok(None)
    });
    // Without points above the whole chain the chain's cut is empty under the
    // empty convention, and the truncated chain adds nothing a principal set
    // does not; otherwise the points above the chain separate the two.
    if tail_cut(carrier, empty).is_empty() {
        s.check("truncation-waybelow", "way-below agrees with the truncation under the empty convention", empty, || {
            let sp = Space::alexandroff(carrier.clone(), empty)?;
            let ts = Space::alexandroff(tc.clone(), empty)?;
            let fin = finite_arguments(carrier, n);
            for a in &fin {
                let ta = SetExpr::from_mask(tr(a));
                for b in &fin {
                    let x = waybelow::waybelow_r(&sp, a, b)?;
                    let y = waybelow::waybelow_r(&ts, &ta, &SetExpr::from_mask(tr(b)))?;
                    if x != y {
                        return Ok(Some(format!("{} vs {}: glued {x}, truncated {y}", shown(a), shown(b))));
                    }
                }
            }
            Ok(None)
        });
    }
    s
}

fn reduction_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for name in ["ex-omega", "ex-topz"] {
        for conv in DeltaConvention::BOTH {
            let doc = crate::dsl::resolve(&crate::dsl::parse(gallery::source(name).expect("known")).expect("parses"))
                .expect("resolves");
            out.push(
                Check::new(
                    format!("alexandroff-reduction {name}"),
                    "Alexandroff space is SI2-quasicontinuous iff the poset is s2-quasicontinuous",
                    conv,
                )
                .timed(|c| {
                    let s = doc.spaces["S"].space(conv)?;
                    let a = continuity::is_si2_quasicontinuous(&s)?.holds();
                    let b = continuity::is_s2_quasicontinuous(s.carrier(), conv)?.holds();
                    Ok(c.verdict(a == b).note(format!("space {a}, poset {b}")))
                }),
            );
        }
    }
    for conv in DeltaConvention::BOTH {
        let doc = crate::dsl::resolve(&crate::dsl::parse(gallery::source("ex-cofinite").expect("known")).expect("parses"))
            .expect("resolves");
        out.push(
            Check::new(
                "cofinite s2-quasicontinuous but not SI2-quasicontinuous",
                "s2-quasicontinuity of the specialization order does not give SI2-quasicontinuity",
                conv,
            )
            .timed(|c| {
                let s = doc.spaces["S"].space(conv)?;
                let a = continuity::is_si2_quasicontinuous(&s)?.holds();
                let b = continuity::is_s2_quasicontinuous(s.carrier(), conv)?.holds();
                Ok(c.verdict(!a && b))
            }),
        );
    }
    out
}

pub(crate) fn run(params: SuiteParams) -> Report {
    let mut checks = Vec::new();
    for name in gallery::EXAMPLES {
        let r = gallery::run(name).expect("known example");
        checks.extend(r.checks.into_iter().map(|mut c| {
            c.name = format!("{name} {}", c.name);
            c
        }));
    }
    checks.extend(reduction_checks());
    let carriers = glued_carriers();
    let jobs: Vec<(&str, &Carrier, usize)> = (3..=params.max_n.max(3))
        .flat_map(|n| {
            carriers
                .iter()
                .filter(move |(_, c)| c.param_bound() < n)
                .map(move |(l, c)| (l.as_str(), c, n))
        })
        .collect();
    checks.extend(tally(sweep_all(&jobs, |&(l, c, n)| coherence(l, c, n))));
    suite_report("symbolic-examples", checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn carriers_cover_both_examples() {
        let cs = glued_carriers();
        assert!(cs.len() > 20);
        assert!(cs.iter().any(|(l, _)| l == "p0 AbovePrefix(0)"));
    }

    #[test]
    fn short_run_passes() {
        let r = run(SuiteParams { max_n: 4, seed: 0, samples: 0 });
        assert!(r.all_pass() && r.summary.unknown == 0, "{}", r.to_text());
    }
}
