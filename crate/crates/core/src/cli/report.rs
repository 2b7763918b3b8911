use serde::Serialize;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::time::{Duration, Instant};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        }
    }
}

/// One verification check. Runtime is kept out of the JSON so reports are
/// byte-identical across runs.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub claim: String,
    pub status: Status,
    pub measured: Value,
    pub expected: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip)]
    pub runtime: Duration,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

/// What a check closure returns: pass flag, measured, expected.
pub struct Outcome {
    pub pass: bool,
    pub measured: Value,
    pub expected: Value,
    pub reason: Option<String>,
}

impl Outcome {
    pub fn eq<T: Serialize + PartialEq>(measured: T, expected: T) -> Self {
        Outcome { pass: measured == expected, measured: json!(measured), expected: json!(expected), reason: None }
    }

    pub fn holds(pass: bool, measured: Value) -> Self {
        Outcome { pass, measured, expected: json!(true), reason: None }
    }

    pub fn truth(pass: bool) -> Self {
        Outcome::eq(pass, true)
    }

    pub fn note(mut self, r: impl Into<String>) -> Self {
        self.reason = Some(r.into());
        self
    }
}

impl SuiteReport {
    pub fn new(suite: &str) -> Self {
        SuiteReport { suite: suite.into(), checks: Vec::new() }
    }

    /// Runs `f`; an error becomes a failed check carrying the message.
    pub fn run<E: std::fmt::Display>(&mut self, id: &str, claim: &str, f: impl FnOnce() -> Result<Outcome, E>) {
        let t = Instant::now();
        let (status, measured, expected, reason) = match f() {
            Ok(o) => (if o.pass { Status::Pass } else { Status::Fail }, o.measured, o.expected, o.reason),
            Err(e) => (Status::Fail, Value::Null, Value::Null, Some(e.to_string())),
        };
        self.checks.push(Check {
            id: id.into(),
            claim: claim.into(),
            status,
            measured,
            expected,
            reason,
            runtime: t.elapsed(),
        });
    }

    pub fn skip(&mut self, id: &str, claim: &str, reason: impl Into<String>) {
        self.checks.push(Check {
            id: id.into(),
            claim: claim.into(),
            status: Status::Skipped,
            measured: Value::Null,
            expected: Value::Null,
            reason: Some(reason.into()),
            runtime: Duration::ZERO,
        });
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| c.status == Status::Fail).count()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub algebra: String,
    pub suites: Vec<SuiteReport>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.failures() == 0)
    }

    pub fn to_json(&self) -> Value {
        let count = |st: Status| self.suites.iter().flat_map(|s| &s.checks).filter(|c| c.status == st).count();
        json!({
            "command": "verify",
            "algebra": self.algebra,
            "suites": self.suites,
            "summary": {"pass": count(Status::Pass), "fail": count(Status::Fail), "skipped": count(Status::Skipped)},
            "verdict": if self.passed() { "pass" } else { "fail" },
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            let _ = writeln!(out, "== {} / {}", self.algebra, s.suite);
            for c in &s.checks {
                let _ = write!(out, "{} {}: {}", c.status.label(), c.id, c.claim);
                if c.status != Status::Skipped {
                    let _ = write!(out, " | measured {} expected {}", c.measured, c.expected);
                }
                if let Some(r) = &c.reason {
                    let _ = write!(out, " ({r})");
                }
                let _ = writeln!(out, " [{} ms]", c.runtime.as_millis());
            }
        }
        let _ = writeln!(out, "verdict: {}", if self.passed() { "PASS" } else { "FAIL" });
        out
    }
}
