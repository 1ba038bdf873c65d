//! Theorem-level verification drivers. Each returns an [`ExperimentReport`]
//! whose verdict says whether the checked statement held on every case.

mod census;
mod kk;
mod random;
mod rex;
mod verify;

pub use census::{graph_census, name_core};
pub use kk::kk_oracle;
pub use random::{
    curve_csv, log_grid, resilience_trial, threshold_estimate, threshold_grid, threshold_sweep, trial_rng,
    SweepPoint,
};
pub use rex::{rex_oracle, DEFAULT_REX_BUDGET};
pub use verify::{verify_construction, verify_gottlieb, verify_hamilton, verify_r};

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub name: String,
    pub params: BTreeMap<String, Value>,
    pub verdict: Verdict,
    pub witnesses: Vec<Value>,
    pub stats: BTreeMap<String, Value>,
    pub seed: u64,
    pub elapsed_ms: u64,
}

impl ExperimentReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn stat(&self, key: &str) -> Option<&Value> {
        self.stats.get(key)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is always serializable")
    }
}

/// Accumulates a report; `fail` records a witness and flips the verdict.
pub(crate) struct Recorder {
    report: ExperimentReport,
    start: Instant,
}

impl Recorder {
    pub fn new(name: &str, seed: u64) -> Self {
        Recorder {
            report: ExperimentReport {
                name: name.to_string(),
                params: BTreeMap::new(),
                verdict: Verdict::Pass,
                witnesses: Vec::new(),
                stats: BTreeMap::new(),
                seed,
                elapsed_ms: 0,
            },
            start: Instant::now(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.report.params.insert(key.to_string(), to_value(value));
        self
    }

    pub fn stat(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.report.stats.insert(key.to_string(), to_value(value));
        self
    }

    pub fn witness(&mut self, value: impl Serialize) {
        self.report.witnesses.push(to_value(value));
    }

    pub fn fail(&mut self, witness: impl Serialize) {
        self.report.verdict = Verdict::Fail;
        self.witness(witness);
    }

    pub fn inconclusive(&mut self) {
        if self.report.verdict == Verdict::Pass {
            self.report.verdict = Verdict::Inconclusive;
        }
    }

    pub fn finish(mut self) -> ExperimentReport {
        self.report.elapsed_ms = self.start.elapsed().as_millis() as u64;
        self.report
    }
}

fn to_value(value: impl Serialize) -> Value {
    serde_json::to_value(value).expect("plain data serializes")
}
