//! Acceptance criteria, one line each. Runs without the test harness so the
//! lines are always printed; exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cutspace::report::{Report, Verdict};
use cutspace::suites::{run_suite, SuiteParams};
use cutspace::{gallery, Check};

type Outcome = Result<String, String>;

fn find<'a>(r: &'a Report, name: &str, convention: &str) -> Result<&'a Check, String> {
    r.checks
        .iter()
        .find(|c| c.name == name && c.convention == convention)
        .ok_or_else(|| format!("{}: no check `{name}` [{convention}]", r.instance))
}

fn expect(r: &Report, name: &str, convention: &str, verdict: Verdict) -> Result<(), String> {
    let c = find(r, name, convention)?;
    if c.verdict == verdict {
        Ok(())
    } else {
        Err(format!("{}: `{name}` [{convention}] is {:?}, wanted {verdict:?}", r.instance, c.verdict))
    }
}

fn all_pass(r: &Report) -> Result<(), String> {
    if r.summary.fail == 0 && r.summary.unknown == 0 {
        return Ok(());
    }
    let bad: Vec<String> = r
        .checks
        .iter()
        .filter(|c| c.outcome() != cutspace::report::Outcome::Pass)
        .map(|c| format!("{} [{}] {:?} {}", c.name, c.convention, c.verdict, c.witness.as_ref().map_or(String::new(), |w| w.to_string())))
        .collect();
    Err(format!("{}: {}", r.instance, bad.join("; ")))
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let e = start.elapsed();
    if e <= limit {
        Ok(e)
    } else {
        Err(format!("took {e:.1?}, limit {limit:?}"))
    }
}

/// Instances swept by a suite check, read from its witness.
fn instances(r: &Report, name: &str, convention: &str) -> Result<u64, String> {
    let c = find(r, name, convention)?;
    c.witness.as_ref().and_then(|w| w["instances"].as_u64()).ok_or_else(|| format!("`{name}` has no instance count"))
}

fn gallery_verdicts() -> Outcome {
    use Verdict::{False, True};
    let start = Instant::now();
    let omega = gallery::ex_omega();
    let cof = gallery::ex_cofinite();
    let topz = gallery::ex_topz();
    for r in [&omega, &cof, &topz] {
        all_pass(r)?;
    }
    expect(&omega, "si2-quasicontinuous", "standard", True)?;
    expect(&omega, "si2-continuous", "standard", False)?;
    for conv in ["standard", "empty"] {
        expect(&cof, "s2-continuous", conv, True)?;
        expect(&cof, "si2-quasicontinuous", conv, False)?;
    }
    expect(&cof, "way-above set of a point is itself and not open", "empty", True)?;
    expect(&topz, "si2-quasicontinuous", "standard", True)?;
    expect(&topz, "si2-continuous", "standard", False)?;
    expect(&topz, "{z, @n} way below z for n = 0..20", "standard", True)?;
    expect(&topz, "meet of up-sets of {z, @n} is the up-set of z", "standard", True)?;
    expect(&topz, "z is a GD-limit", "standard", True)?;
    expect(&topz, "z is a D-limit", "standard", False)?;
    let e = within(start, Duration::from_secs(5))?;
    let n = omega.checks.len() + cof.checks.len() + topz.checks.len();
    Ok(format!("{n} gallery checks in {e:.2?}"))
}

fn finite_equivalences() -> Outcome {
    let start = Instant::now();
    let r = run_suite("finite-equivalences", SuiteParams { samples: 0, ..SuiteParams::defaults("finite-equivalences").unwrap() })
        .map_err(|e| e.to_string())?;
    all_pass(&r)?;
    for name in [
        "quasicontinuity-equivalence",
        "si2-of-alexandroff-is-weak-scott",
        "way-above-is-interior",
        "open-iff-approximated",
        "way-above-sets-form-basis",
        "intrinsic-topologies-coincide",
    ] {
        for conv in ["standard", "empty"] {
            let k = instances(&r, name, conv)?;
            if k != 1 + 3 + 19 + 219 {
                return Err(format!("`{name}` swept {k} posets"));
            }
        }
    }
    let e = within(start, Duration::from_secs(60))?;
    Ok(format!("242 posets, {} checks, in {e:.2?}", r.checks.len()))
}

fn property_suites() -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    let mut samples = Vec::new();
    let mut finite = None;
    for name in ["finite-equivalences", "convergence", "rudin"] {
        let params = SuiteParams::defaults(name).unwrap();
        if params.max_n < 4 || params.samples < 500 {
            return Err(format!("{name} defaults are below the required bounds"));
        }
        let r = run_suite(name, params).map_err(|e| e.to_string())?;
        all_pass(&r)?;
        total += r.checks.len();
        samples.push(params.samples);
        if name == "finite-equivalences" {
            finite = Some(r);
        }
    }
    let e = within(start, Duration::from_secs(120))?;
    let f = finite.expect("swept above");
    for name in [
        "directed-sets-irreducible",
        "open-sets-upper",
        "waybelow-pointwise",
        "waybelow-up-closures",
        "waybelow-up-inclusion",
        "waybelow-sandwich",
        "directed-family-refines-waybelow",
        "directed-family-enters-open",
        "finite-waybelow-is-membership",
    ] {
        if instances(&f, name, "standard")? < 242 + 500 {
            return Err(format!("`{name}` swept too few instances"));
        }
    }
    Ok(format!("{total} checks over n <= 4 plus {samples:?} samples up to n = 6, in {e:.2?}"))
}

fn truncation_coherence() -> Outcome {
    let start = Instant::now();
    let r = run_suite("symbolic-examples", SuiteParams::defaults("symbolic-examples").unwrap()).map_err(|e| e.to_string())?;
    all_pass(&r)?;
    let mut swept = Vec::new();
    for (name, conv) in [
        ("truncation-order", "standard"),
        ("truncation-closures", "standard"),
        ("truncation-directedness", "standard"),
        ("truncation-irreducibility", "standard"),
        ("truncation-waybelow", "empty"),
    ] {
        let k = instances(&r, name, conv)?;
        if k == 0 {
            return Err(format!("`{name}` swept nothing"));
        }
        swept.push(k);
    }
    let e = start.elapsed();
    Ok(format!("carrier-truncation pairs {swept:?}, zero mismatches, in {e:.2?}"))
}

fn enumeration_counts() -> Outcome {
    let start = Instant::now();
    let r = run_suite("enumeration-counts", SuiteParams::defaults("enumeration-counts").unwrap()).map_err(|e| e.to_string())?;
    all_pass(&r)?;
    for (n, count) in [1u64, 3, 19, 219, 4231].into_iter().enumerate() {
        let c = find(&r, &format!("labeled posets n={}", n + 1), "standard")?;
        let w = c.witness.as_ref().ok_or("missing witness")?;
        if w["enumerated"].as_u64() != Some(count) || w["oracle"].as_u64() != Some(count) {
            return Err(format!("n = {}: {w}", n + 1));
        }
    }
    for conv in ["standard", "empty"] {
        let k = instances(&r, "quasicontinuity-equivalence-sample", conv)?;
        if k * 20 < 4231 {
            return Err(format!("sample of {k} is under 5%"));
        }
    }
    let e = within(start, Duration::from_secs(600))?;
    Ok(format!("1, 3, 19, 219, 4231 match the oracle; 5% sample agrees; in {e:.2?}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 5] = [
        ("example gallery", gallery_verdicts),
        ("finite equivalences", finite_equivalences),
        ("property suites", property_suites),
        ("truncation coherence", truncation_coherence),
        ("enumeration counts", enumeration_counts),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("criterion {} ({name}): PASS - {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL - {msg}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
