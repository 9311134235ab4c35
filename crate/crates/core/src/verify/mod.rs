//! Verification suites with a machine-readable report.
//!
//! Each suite produces one [`CaseReport`] per case. A case fails with a
//! witness describing the first disagreement found; library errors raised
//! while checking a case count as failures too.

use std::time::Instant;

use serde::{Deserialize, Serialize};

pub mod inventory;
pub mod maps;
pub mod pairing;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseReport {
    pub suite: String,
    pub case: String,
    pub status: Status,
    pub witness: Option<String>,
    pub micros: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub cases: Vec<CaseReport>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseReport> {
        self.cases.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.cases.iter().filter(|c| c.status == status).count()
    }

    pub fn suite(&self, name: &str) -> Report {
        Report { cases: self.cases.iter().filter(|c| c.suite == name).cloned().collect() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Groups of larger order are left out of the inventory.
    pub max_order: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { max_order: 12, seed: 0 }
    }
}

/// What a single check concluded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    Skip(String),
    /// A negative control caught the failure it was built to show.
    Detected(String),
}

impl From<Option<String>> for Outcome {
    fn from(w: Option<String>) -> Self {
        w.map_or(Outcome::Pass, Outcome::Fail)
    }
}

pub type CheckResult = Result<Outcome, Box<dyn std::error::Error>>;

/// Runs one case and times it.
pub fn run_case(suite: &str, case: impl Into<String>, f: impl FnOnce() -> CheckResult) -> CaseReport {
    let start = Instant::now();
    let outcome = f();
    let micros = start.elapsed().as_micros() as u64;
    let (status, witness) = match outcome {
        Ok(Outcome::Pass) => (Status::Pass, None),
        Ok(Outcome::Fail(w)) => (Status::Fail, Some(w)),
        Ok(Outcome::Skip(w)) => (Status::Skip, Some(w)),
        Ok(Outcome::Detected(w)) => (Status::Pass, Some(format!("detected: {w}"))),
        Err(e) => (Status::Fail, Some(format!("error: {e}"))),
    };
    CaseReport { suite: suite.to_string(), case: case.into(), status, witness, micros }
}

/// Suite names accepted by [`run`], in the order `all` runs them.
pub const SUITES: &[&str] = &[
    "homotopy",
    "group-change",
    "cores-res",
    "well-definedness",
    "kernels",
    "duality",
    "naturality",
    "conjugation",
    "field-change",
    "restriction",
    "galois",
    "symmetry",
    "antisymmetry",
    "gamma",
    "oracle",
];

/// Runs a suite by name, or every suite for `"all"`. `None` for an
/// unknown name.
pub fn run(suite: &str, opts: &VerifyOptions) -> Option<Report> {
    if suite == "all" {
        let mut cases = Vec::new();
        for s in SUITES {
            cases.extend(run(s, opts)?.cases);
        }
        return Some(Report { cases });
    }
    let cases = match suite {
        "homotopy" => maps::homotopy(opts),
        "group-change" => maps::group_change(opts),
        "cores-res" => maps::cores_res(opts),
        "well-definedness" => pairing::well_definedness(opts),
        "kernels" => pairing::kernels(opts),
        "duality" => pairing::duality(opts),
        "naturality" => pairing::naturality(opts),
        "conjugation" => pairing::conjugation(opts),
        "field-change" => pairing::field_change(opts),
        "restriction" => pairing::restriction(opts),
        "galois" => pairing::galois(opts),
        "symmetry" => pairing::symmetry(opts),
        "antisymmetry" => pairing::antisymmetry(opts),
        "gamma" => pairing::gamma(opts),
        "oracle" => pairing::oracle(opts),
        _ => return None,
    };
    Some(Report { cases })
}
