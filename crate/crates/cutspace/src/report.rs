//! Check results and their JSON and text renderings.

use std::fmt::Write;
use std::time::Instant;

use cutspace_core::convergence::LimitWitness;
use cutspace_core::waybelow::WxDescription;
use cutspace_core::{Carrier, DeltaConvention, ElementRef, SetExpr};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    True,
    False,
    Unknown,
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }
}

impl From<Option<bool>> for Verdict {
    fn from(b: Option<bool>) -> Self {
        b.map_or(Verdict::Unknown, Verdict::from)
    }
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// The claim the check tests.
    pub anchor: String,
    pub convention: String,
    pub verdict: Verdict,
    /// The verdict the claim predicts.
    pub expected: bool,
    pub witness: Option<Value>,
    pub notes: String,
    pub millis: u64,
}

impl Check {
    pub fn new(name: impl Into<String>, anchor: impl Into<String>, convention: DeltaConvention) -> Self {
        Self {
            name: name.into(),
            anchor: anchor.into(),
            convention: convention.as_str().into(),
            verdict: Verdict::Unknown,
            expected: true,
            witness: None,
            notes: String::new(),
            millis: 0,
        }
    }

    pub fn verdict(mut self, v: impl Into<Verdict>) -> Self {
        self.verdict = v.into();
        self
    }

    pub fn expect(mut self, e: bool) -> Self {
        self.expected = e;
        self
    }

    pub fn witness(mut self, w: Value) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn note(mut self, n: impl Into<String>) -> Self {
        let n = n.into();
        if !self.notes.is_empty() {
            self.notes.push_str("; ");
        }
        self.notes.push_str(&n);
        self
    }

    /// Runs `f`, records its duration, and turns an error into an unknown
    /// verdict carrying the message.
    pub fn timed(self, f: impl FnOnce(Self) -> cutspace_core::Result<Self>) -> Self {
        let start = Instant::now();
        let backup = self.clone();
        let mut c = match f(self) {
            Ok(c) => c,
            Err(e) => backup.verdict(Verdict::Unknown).note(format!("error: {e}")),
        };
        c.millis = start.elapsed().as_millis() as u64;
        c
    }

    pub fn outcome(&self) -> Outcome {
        match self.verdict {
            Verdict::Unknown => Outcome::Unknown,
            Verdict::True if self.expected => Outcome::Pass,
            Verdict::False if !self.expected => Outcome::Pass,
            _ => Outcome::Fail,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub unknown: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub instance: String,
    pub convention: String,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl Report {
    pub fn new(instance: impl Into<String>, convention: impl Into<String>) -> Self {
        Self { instance: instance.into(), convention: convention.into(), ..Self::default() }
    }

    pub fn empty() -> Self {
        Self::new("", "standard")
    }

    pub fn push(&mut self, c: Check) {
        match c.outcome() {
            Outcome::Pass => self.summary.pass += 1,
            Outcome::Fail => self.summary.fail += 1,
            Outcome::Unknown => self.summary.unknown += 1,
        }
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        for c in other.checks {
            self.push(c);
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0
    }

    /// Zeroes every duration, for byte-stable output.
    pub fn without_timings(mut self) -> Self {
        for c in &mut self.checks {
            c.millis = 0;
        }
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// One line per check, then a summary line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "instance {}", if self.instance.is_empty() { "-" } else { &self.instance }).unwrap();
        writeln!(out, "convention {}", self.convention).unwrap();
        for c in &self.checks {
            let status = match c.outcome() {
                Outcome::Pass => "PASS",
                Outcome::Fail => "FAIL",
                Outcome::Unknown => "UNKNOWN",
            };
            write!(
                out,
                "{status:7} {} [{}] verdict={} expected={} {}ms",
                c.name, c.convention, c.verdict.as_str(), c.expected, c.millis
            )
            .unwrap();
            if let Some(w) = &c.witness {
                write!(out, " witness={w}").unwrap();
            }
            if !c.notes.is_empty() {
                write!(out, " notes=\"{}\"", c.notes).unwrap();
            }
            out.push('\n');
        }
        writeln!(out, "summary pass={} fail={} unknown={}", self.summary.pass, self.summary.fail, self.summary.unknown)
            .unwrap();
        out
    }
}

pub fn point_json(carrier: &Carrier, x: ElementRef) -> Value {
    Value::String(carrier.display(x).to_string())
}

pub fn set_json(carrier: &Carrier, s: &SetExpr) -> Value {
    Value::String(s.display(carrier).to_string())
}

pub fn family_json(carrier: &Carrier, f: &WxDescription) -> Value {
    match f {
        WxDescription::Explicit(v) => json!({ "sets": v.iter().map(|s| set_json(carrier, s)).collect::<Vec<_>>() }),
        WxDescription::Parametric { base, from } => json!({
            "base": set_json(carrier, base),
            "plus_chain_point_from": from,
        }),
        WxDescription::Empty => json!({ "sets": [] }),
    }
}

pub fn limit_witness_json(carrier: &Carrier, w: &LimitWitness) -> Value {
    match w {
        LimitWitness::Directed(d) => json!({ "directed": set_json(carrier, d) }),
        LimitWitness::Family(f) => json!({ "family": family_json(carrier, f) }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_json() {
        assert_eq!(
            Report::empty().to_json(),
            r#"{"instance":"","convention":"standard","checks":[],"summary":{"pass":0,"fail":0,"unknown":0}}"#
        );
    }

    #[test]
    fn outcomes_follow_expectations() {
        let mut r = Report::empty();
        r.push(Check::new("a", "x", DeltaConvention::StandardCut).verdict(true));
        r.push(Check::new("b", "x", DeltaConvention::StandardCut).verdict(false).expect(false));
        r.push(Check::new("c", "x", DeltaConvention::StandardCut).verdict(false));
        r.push(Check::new("d", "x", DeltaConvention::EmptyCut));
        assert_eq!(r.summary, Summary { pass: 2, fail: 1, unknown: 1 });
        assert!(!r.all_pass());
    }

    #[test]
    fn errors_become_unknown() {
        let c = Check::new("a", "x", DeltaConvention::StandardCut)
            .timed(|_| Err(cutspace_core::Error::EmptySet));
        assert_eq!(c.verdict, Verdict::Unknown);
        assert!(c.notes.contains("nonempty"));
    }
}
