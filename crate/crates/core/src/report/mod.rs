//! Residual bookkeeping and the verification report.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::Mat;
use crate::scalars::QScalar;
use crate::weight::{LambdaField, WMat};

mod suite;

pub use suite::{classical_limit, flatness, run_suite, run_verify_suite, structural_battery, well_definedness, SuiteConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteEntry {
    pub identity: String,
    pub anchor: String,
    pub degree: usize,
    pub status: Status,
    pub residual: String,
}

impl SuiteEntry {
    pub fn new(identity: &str, anchor: &str, degree: usize, residual: String) -> Self {
        let status = if residual == "0" { Status::Pass } else { Status::Fail };
        SuiteEntry { identity: identity.into(), anchor: anchor.into(), degree, status, residual }
    }

    pub fn failed(identity: &str, anchor: &str, degree: usize, err: &crate::Error) -> Self {
        SuiteEntry {
            identity: identity.into(),
            anchor: anchor.into(),
            degree,
            status: Status::Fail,
            residual: format!("error: {err}"),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Running maximum of residual entries, by magnitude at a generic point.
#[derive(Clone, Debug, Default)]
pub struct Tally {
    worst: Option<(f64, String)>,
}

impl Tally {
    pub fn new() -> Self {
        Tally::default()
    }

    fn offer(&mut self, mag: f64, text: String) {
        let mag = if mag.is_finite() { mag } else { f64::MAX };
        if self.worst.as_ref().map_or(true, |(w, _)| mag > *w) {
            self.worst = Some((mag, text));
        }
    }

    pub fn scalar(&mut self, s: &QScalar) {
        if !s.is_zero() {
            self.offer(s.magnitude(), s.to_string());
        }
    }

    pub fn mat(&mut self, m: &Mat) {
        if let Some(e) = m.max_entry() {
            self.offer(e.magnitude(), e.to_string());
        }
    }

    /// Folds `w` with what is known about `lambda` and records its largest entry.
    pub fn wmat(&mut self, w: &WMat, f: &LambdaField) {
        for (k, m) in w.fold(f).parts() {
            if let Some(e) = m.max_entry() {
                let text = if *k == 0 { e.to_string() } else { format!("({e})*lambda^({k}/2)") };
                self.offer(e.magnitude(), text);
            }
        }
    }

    pub fn merge(&mut self, o: Tally) {
        if let Some((m, t)) = o.worst {
            self.offer(m, t);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.worst.is_none()
    }

    pub fn summary(&self) -> String {
        self.worst.as_ref().map(|(_, t)| t.clone()).unwrap_or_else(|| "0".into())
    }

    pub fn entry(&self, identity: &str, anchor: &str, degree: usize) -> SuiteEntry {
        SuiteEntry::new(identity, anchor, degree, self.summary())
    }
}

/// Runs `f` per degree and turns its tally (or error) into one entry per degree.
pub fn per_degree(
    identity: &str,
    anchor: &str,
    degrees: impl IntoIterator<Item = usize>,
    f: impl Fn(usize) -> Result<Tally> + Sync,
) -> Vec<SuiteEntry> {
    use rayon::prelude::*;
    let degrees: Vec<usize> = degrees.into_iter().collect();
    degrees
        .par_iter()
        .map(|&d| match f(d) {
            Ok(t) => t.entry(identity, anchor, d),
            Err(e) => SuiteEntry::failed(identity, anchor, d, &e),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportConfig {
    pub max_degree: usize,
    pub lambda_nu: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub model: String,
    pub config: ReportConfig,
    pub entries: Vec<SuiteEntry>,
    /// Seconds per suite section; excluded from the deterministic JSON form.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub timings: Vec<(String, f64)>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(SuiteEntry::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &SuiteEntry> {
        self.entries.iter().filter(|e| !e.passed())
    }

    /// Stable JSON: sorted keys, no timings.
    pub fn to_json(&self) -> String {
        let mut stripped = self.clone();
        stripped.timings.clear();
        let v = serde_json::to_value(&stripped).expect("serializable");
        serde_json::to_string_pretty(&v).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| crate::Error::Format(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("model {} (max degree {})\n", self.model, self.config.max_degree);
        for e in &self.entries {
            let st = if e.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!("{st} {} [{}] degree {}: {}\n", e.identity, e.anchor, e.degree, e.residual));
        }
        out
    }
}
