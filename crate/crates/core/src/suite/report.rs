use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::hessian::{IdentityReport, SampleConfig, Verdict};

/// One verified claim inside a criterion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub measured: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub expected: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub formula: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl CheckRecord {
    pub fn new(id: impl Into<String>) -> Self {
        CheckRecord {
            id: id.into(),
            verdict: Verdict::Pass,
            certificate: None,
            measured: BTreeMap::new(),
            expected: BTreeMap::new(),
            formula: None,
            detail: None,
            elapsed_ms: None,
        }
    }

    pub fn failed(id: impl Into<String>, detail: impl Into<String>) -> Self {
        let mut r = CheckRecord::new(id);
        r.verdict = Verdict::Fail;
        r.detail = Some(detail.into());
        r
    }

    /// Records `measured` next to `expected` and fails unless they agree.
    pub fn compare<T: Serialize + PartialEq>(mut self, key: &str, measured: T, expected: T) -> Self {
        if measured != expected {
            self.verdict = Verdict::Fail;
        }
        self.measured.insert(key.into(), to_value(&measured));
        self.expected.insert(key.into(), to_value(&expected));
        self
    }

    /// Records a value that is reported but not judged.
    pub fn measure<T: Serialize>(mut self, key: &str, value: T) -> Self {
        self.measured.insert(key.into(), to_value(&value));
        self
    }

    /// Records a reference value that is reported but not judged.
    pub fn reference<T: Serialize>(mut self, key: &str, value: T) -> Self {
        self.expected.insert(key.into(), to_value(&value));
        self
    }

    /// Fails the record unless `ok`; `what` explains the requirement.
    pub fn require(mut self, ok: bool, what: &str) -> Self {
        if !ok {
            self.verdict = Verdict::Fail;
            let d = self.detail.take();
            self.detail = Some(match d {
                Some(prev) => format!("{prev}; failed: {what}"),
                None => format!("failed: {what}"),
            });
        }
        self
    }

    pub fn certificate(mut self, kind: impl Into<String>) -> Self {
        self.certificate = Some(kind.into());
        self
    }

    pub fn formula(mut self, f: impl Into<String>) -> Self {
        self.formula = Some(f.into());
        self
    }

    pub fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }

    /// Wraps an identity report, keeping its verdict and measurements.
    pub fn from_identity(id: impl Into<String>, report: &IdentityReport) -> Self {
        let mut r = CheckRecord::new(id);
        r.verdict = report.verdict;
        r.certificate = Some(
            match report.method {
                crate::hessian::Method::Exact => "exact",
                crate::hessian::Method::SchwartzZippel => "schwartz-zippel",
            }
            .into(),
        );
        r.formula = report.formula.clone();
        r.detail = report.detail.clone();
        if let Some(b) = report.log10_failure_bound {
            r = r.measure("log10_failure_bound", b);
        }
        if let Some(c) = &report.measured_constant {
            r = r.measure("constant", c);
        }
        if let Some(c) = &report.expected_constant {
            r = r.reference("constant", c);
        }
        if let Some(m) = report.convention_mismatch {
            r = r.measure("convention_mismatch", m);
        }
        if let Some(i) = report.first_failure {
            r = r.measure("first_failure", i);
        }
        r
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("plain data serializes")
}

/// The records behind one acceptance criterion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub number: u8,
    pub title: String,
    pub verdict: Verdict,
    pub checks: Vec<CheckRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }

    /// One line: number, verdict, title and the failing check ids.
    pub fn summary_line(&self) -> String {
        let mut line = format!("criterion {:>2} {} {}", self.number, verdict_word(self.verdict), self.title);
        let failing: Vec<&str> = self
            .checks
            .iter()
            .filter(|c| !c.passed())
            .map(|c| c.id.as_str())
            .collect();
        if !failing.is_empty() {
            line.push_str(&format!(" (failing: {})", failing.join(", ")));
        }
        if let Some(ms) = self.elapsed_ms {
            line.push_str(&format!(" [{ms} ms]"));
        }
        line
    }
}

fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "PASS",
        Verdict::Fail => "FAIL",
    }
}

/// Outcome of an acceptance run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub config: SampleConfig,
    pub verdict: Verdict,
    pub criteria: Vec<CriterionResult>,
}

impl RunReport {
    pub fn new(config: SampleConfig, criteria: Vec<CriterionResult>) -> Self {
        let verdict = Verdict::from_bool(criteria.iter().all(CriterionResult::passed));
        RunReport {
            tool: "vhess".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            config,
            verdict,
            criteria,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// Human-readable summary, one line per criterion plus a total.
    pub fn summary(&self) -> String {
        let mut out: Vec<String> = self.criteria.iter().map(CriterionResult::summary_line).collect();
        let passed = self.criteria.iter().filter(|c| c.passed()).count();
        out.push(format!(
            "{} {passed}/{} criteria passed (prime {}, trials {}, seed {})",
            verdict_word(self.verdict),
            self.criteria.len(),
            self.config.prime,
            self.config.trials,
            self.config.seed
        ));
        out.join("\n")
    }
}
