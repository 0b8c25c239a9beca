//! D-, GD- and topological limits of eventually cyclic nets on finite
//! spaces, and the glued and cofinite examples.

use cutspace_core::convergence::{self, LimitWitness, NetPresentation, Strand};
use cutspace_core::finite::Mask;
use cutspace_core::order::is_directed_mask_family;
use cutspace_core::{Carrier, DeltaConvention, ElementRef, Space, Topology};

use super::finite::FiniteCtx;
use super::{instances, small_families, suite_report, sweep_all, tally, unless, Instance, SuiteParams, Sweep};
use crate::gallery;
use crate::report::Report;

/// Brute-force GD check is run up to this size.
const BRUTE_FORCE_MAX: usize = 3;

/// Every cycle is swept up to this size; above it one cycle per support.
const ALL_CYCLES_MAX: usize = 4;

/// Every cycle of length one to three over `n` points.
fn cycles(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..n).map(|a| vec![a]).collect();
    for len in 2..=3 {
        let mut next = Vec::new();
        for c in out.iter().filter(|c| c.len() == len - 1) {
            for x in 0..n {
                let mut d = c.clone();
                d.push(x);
                next.push(d);
            }
        }
        out.extend(next);
    }
    out
}

/// One cycle per support of at most three points. Tails of a cyclic net are
/// all its support, so every limit notion sees only the support.
fn supports(n: usize) -> Vec<Vec<usize>> {
    cycles(n).into_iter().filter(|c| c.windows(2).all(|w| w[0] < w[1])).collect()
}

fn net_of(carrier: &Carrier, cycle: &[usize]) -> cutspace_core::Result<NetPresentation> {
    NetPresentation::new(carrier, cycle.iter().map(|&x| Strand::Constant(ElementRef::Named(x))).collect())
}

fn net_checks(s: &mut Sweep, c: &FiniteCtx, cycle: &[usize], brute: Option<&[Vec<Mask>]>) {
    let conv = c.conv;
    let n = c.n();
    let p = &c.p;
    let support = cycle.iter().fold(0 as Mask, |m, &x| m | 1 << x);
    let net = match net_of(&c.carrier, cycle) {
        Ok(net) => net,
        Err(e) => return s.check("net", "cyclic nets are presentable", conv, || Err(e)),
    };
    let label = || format!("net {}", c.name(support));
    let (d, gd) = match (convergence::d_limits(&c.space, &net), convergence::gd_limits(&c.space, &net)) {
        (Ok(d), Ok(gd)) => (d, gd),
        (Err(e), _) | (_, Err(e)) => return s.check("limits", "limits are computable", conv, || Err(e)),
    };
    let gd_set = gd.set.as_ref().map(|g| g.named_mask());
    s.check("d-limits-are-gd-limits", "D-limits are GD-limits through the singleton family of the directed witness", conv, || {
        let Some(g) = gd_set else { return Ok(Some(format!("{}: GD undecided", label()))) };
        if d.set.named_mask() & !g != 0 {
            return Ok(Some(format!("{}: D {} not inside GD {}", label(), c.name(d.set.named_mask()), c.name(g))));
        }
        for (x, w) in &d.witnesses {
            if let LimitWitness::Directed(dd) = w {
                let fam = convergence::family_from_directed(dd);
                if !convergence::check_family_witness(&c.space, &net, *x, &fam)? {
                    return Ok(Some(format!("{}: converted witness fails at {:?}", label(), x)));
                }
            }
        }
        Ok(None)
    });
    s.check("gd-limits-are-eventual-lower-bounds", "on finite spaces GD-limits are the eventual lower bounds", conv, || {
        let lb = p.lower_bounds(support);
        Ok(unless(gd_set == Some(lb), || format!("{}: GD {:?}, lower bounds {}", label(), gd_set.map(|g| c.name(g)), c.name(lb))))
    });
    if let Some(fams) = brute {
        s.check("gd-single-witness-collapse", "a directed family of quasi-eventual lower bounds can be replaced by one of its members", conv, || {
            // Quasi-eventual lower bounds: F whose up-set holds the net.
            let qelb = |f: Mask| support & !c.up(f) == 0;
            let full: Mask = (1 << n) - 1;
            let brute = (0..n)
                .filter(|&x| {
                    fams.iter()
                        .filter(|f| f.iter().all(|&m| qelb(m)))
                        .any(|f| f.iter().fold(full, |m, &g| m & c.up(g)) & !p.up(x) == 0)
                })
                .fold(0 as Mask, |m, x| m | 1 << x);
            Ok(unless(gd_set == Some(brute), || format!("{}: brute force {}", label(), c.name(brute))))
        });
    }
    s.check("gd-agrees-with-si2-convergence", "GD-limits are the limits in the weakly irreducible topology", conv, || {
        let k = convergence::convergence_check(&c.space, std::slice::from_ref(&net))?;
        Ok(unless(k.agree() && k.consistent() && k.quasicontinuous, || format!("{}: {k:?}", label())))
    });
    s.check("limit-sets-lower", "D-, GD- and topological limit sets are lower sets", conv, || {
        let si2 = convergence::topological_limits(&c.space, &net, &Topology::si2(c.space.topology().clone()))?;
        let alex = convergence::topological_limits(&c.space, &net, c.space.topology())?;
        let sets = [d.set.named_mask(), gd_set.unwrap_or(0), si2.named_mask(), alex.named_mask()];
        Ok(sets.iter().find(|&&l| !p.is_lower(l)).map(|&l| format!("{}: {} not lower", label(), c.name(l))))
    });
}

fn sweep(inst: &Instance) -> Sweep {
    let mut s = Sweep::new(inst.label.clone());
    let n = inst.poset.len();
    let brute: Option<Vec<Vec<Mask>>> = (n <= BRUTE_FORCE_MAX)
        .then(|| small_families(n).into_iter().filter(|f| is_directed_mask_family(&inst.poset, f)).collect());
    let nets = if n <= ALL_CYCLES_MAX { cycles(n) } else { supports(n) };
    for conv in DeltaConvention::BOTH {
        match FiniteCtx::new(&inst.poset, conv) {
            Ok(c) => {
                for cycle in &nets {
                    net_checks(&mut s, &c, cycle, brute.as_deref());
                }
            }
            Err(e) => s.check("way-below-table", "way-below table is computable", conv, || Err(e)),
        }
    }
    s
}

fn example_space(name: &str, conv: DeltaConvention) -> cutspace_core::Result<Space> {
    let doc = crate::dsl::resolve(&crate::dsl::parse(gallery::source(name).expect("known")).expect("parses"))
        .expect("resolves");
    doc.spaces["S"].space(conv)
}

/// Strand nets on a glued carrier: constants at named points and the first
/// chain points, the chain itself, and the chain interleaved with each point.
fn glued_nets(carrier: &Carrier) -> cutspace_core::Result<Vec<NetPresentation>> {
    let mut pts: Vec<ElementRef> = (0..carrier.named_len()).map(ElementRef::Named).collect();
    pts.extend((0..3).map(ElementRef::Indexed));
    let mut out = vec![NetPresentation::new(carrier, vec![Strand::ChainCofinal(0)])?];
    for &x in &pts {
        out.push(NetPresentation::constant(carrier, x)?);
        out.push(NetPresentation::new(carrier, vec![Strand::ChainCofinal(0), Strand::Constant(x)])?);
    }
    Ok(out)
}

fn symbolic() -> Sweep {
    let mut s = Sweep::new("glued and cofinite examples");
    let std = DeltaConvention::StandardCut;
    for name in ["ex-omega", "ex-topz"] {
        s.check(format!("gd-agrees-with-si2-convergence {name}"), "GD-limits are the weakly irreducible limits on quasicontinuous spaces", std, || {
            let sp = example_space(name, std)?;
            let k = convergence::convergence_check(&sp, &glued_nets(sp.carrier())?)?;
            Ok(unless(k.quasicontinuous && k.agree() && k.consistent(), || format!("{k:?}")))
        });
    }
    s.check("gd-limit-without-d-limit", "a GD-limit need not be a D-limit", std, || {
        let sp = example_space("ex-topz", std)?;
        let z = ElementRef::Named(1);
        let net = NetPresentation::new(sp.carrier(), vec![Strand::ChainCofinal(0), Strand::Constant(z)])?;
        let gd = convergence::gd_witness(&sp, &net, z)?.is_some();
        let d = convergence::d_limits(&sp, &net)?.set.contains(z);
        Ok(unless(gd && !d, || format!("GD {gd}, D {d}")))
    });
    for conv in DeltaConvention::BOTH {
        s.check("cofinite-mismatch", "without quasicontinuity some net separates GD- and weakly irreducible convergence", conv, || {
            let sp = example_space("ex-cofinite", conv)?;
            let x = ElementRef::Indexed(0);
            let nets = vec![
                NetPresentation::new(sp.carrier(), vec![Strand::ChainCofinal(0)])?,
                NetPresentation::constant(sp.carrier(), x)?,
                NetPresentation::new(sp.carrier(), vec![Strand::ChainCofinal(0), Strand::Constant(x)])?,
            ];
            let k = convergence::convergence_check(&sp, &nets)?;
            Ok(unless(!k.quasicontinuous && k.mismatches().next().is_some() && k.consistent(), || format!("{k:?}")))
        });
    }
    s
}

pub(crate) fn run(params: SuiteParams) -> Report {
    let items = instances(params);
    let mut sweeps = sweep_all(&items, sweep);
    sweeps.push(symbolic());
    suite_report("convergence", tally(sweeps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Verdict;

    #[test]
    fn cycle_count() {
        assert_eq!(cycles(2).len(), 2 + 4 + 8);
        assert_eq!(supports(4).len(), 4 + 6 + 4);
    }

    #[test]
    fn small_sweep_passes() {
        let r = run(SuiteParams { max_n: 2, seed: 1, samples: 2 });
        assert!(r.checks.iter().all(|c| c.verdict == Verdict::True), "{}", r.to_text());
    }
}
