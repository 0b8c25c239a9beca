//! Invariant sweeps over enumerated and sampled instances.
//!
//! Each instance produces a list of findings; findings are folded into one
//! report check per property and convention, in the order the properties
//! first appear, so reports do not depend on which worker finished first.

mod convergence;
mod counts;
mod duality;
mod finite;
mod rudin;
mod symbolic;

use std::sync::OnceLock;
use std::time::Instant;

use cutspace_core::enumerate::{poset_rows, MAX_ENUMERATED};
use cutspace_core::finite::Mask;
use cutspace_core::{DeltaConvention, FinitePoset};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::pool;
use crate::report::{Check, Report, Verdict};

pub use counts::{oracle_count, REFERENCE_COUNTS};

pub const SUITES: [&str; 6] =
    ["finite-equivalences", "symbolic-examples", "convergence", "convention-duality", "rudin", "enumeration-counts"];

#[derive(Debug, PartialEq, Eq, thiserror::Error)]
pub enum SuiteError {
    #[error("unknown suite `{0}`; expected one of {list}", list = SUITES.join(", "))]
    UnknownSuite(String),
    #[error("max-n {0} outside 1..={MAX_ENUMERATED}")]
    OutOfRange(usize),
}

/// Bounds of a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteParams {
    /// Largest instance size swept exhaustively. For `symbolic-examples` the
    /// largest truncation length.
    pub max_n: usize,
    pub seed: u64,
    /// Random instances drawn above `max_n`, up to six points.
    pub samples: usize,
}

pub const DEFAULT_SEED: u64 = 0x5eed_c075;

impl SuiteParams {
    /// Defaults per suite. With one worker: finite-equivalences, convergence
    /// and rudin take a few seconds each, enumeration-counts under a minute.
    pub fn defaults(name: &str) -> Result<Self, SuiteError> {
        let (max_n, samples) = match name {
            "finite-equivalences" | "convergence" | "rudin" => (4, 500),
            "convention-duality" => (4, 0),
            "symbolic-examples" => (6, 0),
            "enumeration-counts" => (5, 0),
            _ => return Err(SuiteError::UnknownSuite(name.into())),
        };
        Ok(Self { max_n, seed: DEFAULT_SEED, samples })
    }
}

pub fn run_suite(name: &str, params: SuiteParams) -> Result<Report, SuiteError> {
    SuiteParams::defaults(name)?;
    if params.max_n == 0 || params.max_n > MAX_ENUMERATED {
        return Err(SuiteError::OutOfRange(params.max_n));
    }
    Ok(match name {
        "finite-equivalences" => finite::run(params),
        "symbolic-examples" => symbolic::run(params),
        "convergence" => convergence::run(params),
        "convention-duality" => duality::run(params),
        "rudin" => rudin::run(params),
        "enumeration-counts" => counts::run(params),
        _ => unreachable!("checked above"),
    })
}

pub(crate) enum Outcome {
    Pass,
    Fail(String),
    Unknown(String),
}

pub(crate) struct Finding {
    key: String,
    anchor: &'static str,
    convention: DeltaConvention,
    outcome: Outcome,
    nanos: u128,
}

/// Findings of one instance.
pub(crate) struct Sweep {
    label: String,
    findings: Vec<Finding>,
}

impl Sweep {
    pub(crate) fn new(label: impl Into<String>) -> Self {
        Self { label: label.into(), findings: Vec::new() }
    }

    /// Records a property: `Ok(None)` holds, `Ok(Some(detail))` fails.
    pub(crate) fn check(
        &mut self,
        key: impl Into<String>,
        anchor: &'static str,
        convention: DeltaConvention,
        f: impl FnOnce() -> cutspace_core::Result<Option<String>>,
    ) {
        let start = Instant::now();
        let outcome = match f() {
            Ok(None) => Outcome::Pass,
            Ok(Some(d)) => Outcome::Fail(d),
            Err(e) => Outcome::Unknown(e.to_string()),
        };
        self.findings.push(Finding {
            key: key.into(),
            anchor,
            convention,
            outcome,
            nanos: start.elapsed().as_nanos(),
        });
    }
}

/// `Some(detail)` unless `ok`.
pub(crate) fn unless(ok: bool, detail: impl FnOnce() -> String) -> Option<String> {
    (!ok).then(detail)
}

struct Tally {
    key: String,
    anchor: &'static str,
    convention: DeltaConvention,
    instances: usize,
    failures: usize,
    unknowns: usize,
    first_failure: Option<(String, String)>,
    first_unknown: Option<(String, String)>,
    nanos: u128,
}

/// Folds per-instance findings into one check per property and convention.
pub(crate) fn tally(sweeps: Vec<Sweep>) -> Vec<Check> {
    let mut out: Vec<Tally> = Vec::new();
    for s in sweeps {
        for f in s.findings {
            let i = match out.iter().position(|t| t.key == f.key && t.convention == f.convention) {
                Some(i) => i,
                None => {
                    out.push(Tally {
                        key: f.key.clone(),
                        anchor: f.anchor,
                        convention: f.convention,
                        instances: 0,
                        failures: 0,
                        unknowns: 0,
                        first_failure: None,
                        first_unknown: None,
                        nanos: 0,
                    });
                    out.len() - 1
                }
            };
            let t = &mut out[i];
            t.instances += 1;
            t.nanos += f.nanos;
            match f.outcome {
                Outcome::Pass => {}
                Outcome::Fail(d) => {
                    t.failures += 1;
                    t.first_failure.get_or_insert((s.label.clone(), d));
                }
                Outcome::Unknown(d) => {
                    t.unknowns += 1;
                    t.first_unknown.get_or_insert((s.label.clone(), d));
                }
            }
        }
    }
    out.into_iter()
        .map(|t| {
            let verdict = if t.failures > 0 {
                Verdict::False
            } else if t.unknowns > 0 {
                Verdict::Unknown
            } else {
                Verdict::True
            };
            let first = t.first_failure.as_ref().map(|(i, d)| json!({ "instance": i, "detail": d }));
            let mut c = Check::new(t.key, t.anchor, t.convention).verdict(verdict).witness(json!({
                "instances": t.instances,
                "failures": t.failures,
                "first_failure": first,
            }));
            if let Some((i, d)) = t.first_unknown {
                c = c.note(format!("{} undecided, first at {i}: {d}", t.unknowns));
            }
            c.millis = (t.nanos / 1_000_000) as u64;
            c
        })
        .collect()
}

/// Runs `f` on every item through the worker pool, keeping item order.
pub(crate) fn sweep_all<T: Sync>(items: &[T], f: impl Fn(&T) -> Sweep + Sync + Send) -> Vec<Sweep> {
    pool::install(|| items.par_iter().map(&f).collect())
}

fn rows_of(n: usize) -> &'static [Vec<Mask>] {
    static ROWS: [OnceLock<Vec<Vec<Mask>>>; MAX_ENUMERATED + 1] = [const { OnceLock::new() }; MAX_ENUMERATED + 1];
    ROWS[n].get_or_init(|| poset_rows(n).expect("size in range"))
}

/// A labeled poset and where it came from.
pub(crate) struct Instance {
    pub label: String,
    pub poset: FinitePoset,
}

fn instance(n: usize, i: usize, tag: &str) -> Instance {
    let poset = FinitePoset::with_default_names(rows_of(n)[i].clone()).expect("enumerated rows are posets");
    let covers: Vec<String> =
        poset.covers().iter().map(|&(a, b)| format!("{}<{}", poset.name(a), poset.name(b))).collect();
    Instance { label: format!("{tag}n={n} #{i} [{}]", covers.join(", ")), poset }
}

/// Every poset with at most `max_n` points, then `samples` posets drawn
/// uniformly from sizes `max_n + 1 ..= 6` (if any).
pub(crate) fn instances(params: SuiteParams) -> Vec<Instance> {
    let mut out = Vec::new();
    for n in 1..=params.max_n {
        out.extend((0..rows_of(n).len()).map(|i| instance(n, i, "")));
    }
    if params.max_n < MAX_ENUMERATED {
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        for k in 0..params.samples {
            let n = rng.gen_range(params.max_n + 1..=MAX_ENUMERATED);
            let i = rng.gen_range(0..rows_of(n).len());
            out.push(instance(n, i, &format!("sample {k} ")));
        }
    }
    out
}

/// `count` distinct indices into the posets of size `n`, chosen by `seed`.
pub(crate) fn sample_indices(n: usize, count: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idx = rand::seq::index::sample(&mut rng, rows_of(n).len(), count).into_vec();
    idx.sort_unstable();
    idx
}

pub(crate) fn sampled_instances(n: usize, count: usize, seed: u64) -> Vec<Instance> {
    sample_indices(n, count, seed).into_iter().map(|i| instance(n, i, "")).collect()
}

/// Every nonempty subset of the first `n` points.
pub(crate) fn nonempty_subsets(n: usize) -> impl Iterator<Item = Mask> {
    1..(1 << n)
}

/// Families of one to three distinct nonempty subsets of `n` points.
pub(crate) fn small_families(n: usize) -> Vec<Vec<Mask>> {
    let sets: Vec<Mask> = nonempty_subsets(n).collect();
    let mut out = Vec::new();
    for (i, &a) in sets.iter().enumerate() {
        out.push(vec![a]);
        for (j, &b) in sets.iter().enumerate().skip(i + 1) {
            out.push(vec![a, b]);
            for &c in &sets[j + 1..] {
                out.push(vec![a, b, c]);
            }
        }
    }
    out
}

pub(crate) fn suite_report(name: &str, checks: Vec<Check>) -> Report {
    let mut r = Report::new(name, "both");
    for c in checks {
        r.push(c);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert_eq!(run_suite("nope", SuiteParams::defaults("rudin").unwrap()), Err(SuiteError::UnknownSuite("nope".into())));
        assert!(SuiteParams::defaults("nope").is_err());
    }

    #[test]
    fn instance_lists_are_deterministic() {
        let p = SuiteParams { max_n: 2, seed: 7, samples: 5 };
        let a: Vec<String> = instances(p).into_iter().map(|i| i.label).collect();
        let b: Vec<String> = instances(p).into_iter().map(|i| i.label).collect();
        assert_eq!(a, b);
        assert_eq!(a.len(), 1 + 3 + 5);
    }

    #[test]
    fn family_counts() {
        // 3 sets: 3 singles, 3 pairs, 1 triple.
        assert_eq!(small_families(2).len(), 7);
    }

    #[test]
    fn tally_orders_and_counts() {
        let conv = DeltaConvention::StandardCut;
        let mut a = Sweep::new("a");
        a.check("p", "x", conv, || Ok(None));
        a.check("q", "x", conv, || Ok(Some("bad".into())));
        let mut b = Sweep::new("b");
        b.check("q", "x", conv, || Ok(None));
        b.check("p", "x", conv, || Err(cutspace_core::Error::EmptySet));
        let checks = tally(vec![a, b]);
        assert_eq!(checks.iter().map(|c| c.name.as_str()).collect::<Vec<_>>(), ["p", "q"]);
        assert_eq!(checks[0].verdict, Verdict::Unknown);
        assert_eq!(checks[1].verdict, Verdict::False);
        assert_eq!(checks[1].witness.as_ref().unwrap()["first_failure"]["instance"], "a");
    }
}
