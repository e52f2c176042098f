//! Group catalog, campaigns over catalog entries, and the report format
//! written by the command-line tool.

mod campaigns;
mod catalog;

pub use campaigns::{
    check_ward_coleman, run_check, run_identity_suite, run_single_check, run_theorem_a_campaign,
    run_theorem_b_campaign, ABC_PAIRS, CHECKERS, L1_SAMPLES, ODD_SAMPLES,
};
pub use catalog::{Catalog, CatalogEntry, LoadedEntry};

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::conjugacy::TorsionEnumeration;
use crate::identities::CheckResult;

pub const REPORT_SCHEMA: &str = "pblock-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Counterexample,
    Inconclusive,
}

impl Verdict {
    /// Process exit code for the verdict.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Counterexample => 1,
            Verdict::Inconclusive => 3,
        }
    }

    pub fn of(checks: &[CheckResult]) -> Verdict {
        if checks.iter().any(|c| !c.passed) {
            Verdict::Counterexample
        } else if checks.iter().any(|c| c.inconclusive > 0) {
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryRef {
    pub name: String,
    pub p: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skipped {
    pub name: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub schema: String,
    pub campaign: String,
    pub entry: EntryRef,
    pub precision: u32,
    pub seed: u64,
    pub trials: u64,
    pub checks: Vec<CheckResult>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<Skipped>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enumeration: Option<TorsionEnumeration>,
    pub verdict: Verdict,
    pub wall_time_ms: u64,
}

impl CampaignReport {
    pub(crate) fn new(
        campaign: &str,
        entry: &LoadedEntry,
        precision: u32,
        seed: u64,
        trials: u64,
    ) -> Self {
        CampaignReport {
            schema: REPORT_SCHEMA.to_string(),
            campaign: campaign.to_string(),
            entry: EntryRef {
                name: entry.entry.name.clone(),
                p: entry.p(),
            },
            precision,
            seed,
            trials,
            checks: Vec::new(),
            skipped: Vec::new(),
            enumeration: None,
            verdict: Verdict::Pass,
            wall_time_ms: 0,
        }
    }

    pub(crate) fn finish(mut self, started: std::time::Instant) -> Self {
        self.verdict = Verdict::of(&self.checks);
        self.wall_time_ms = started.elapsed().as_millis() as u64;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The report with the timing field zeroed, for byte comparison.
    pub fn without_timing(&self) -> Self {
        CampaignReport {
            wall_time_ms: 0,
            ..self.clone()
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{} on {} (p = {}, k = {}, seed {}, {} trials): {:?}",
            self.campaign,
            self.entry.name,
            self.entry.p,
            self.precision,
            self.seed,
            self.trials,
            self.verdict
        );
        for c in &self.checks {
            let status = match (c.passed, c.inconclusive) {
                (false, _) => "COUNTEREXAMPLE".to_string(),
                (true, 0) => "pass".to_string(),
                (true, n) => format!("inconclusive x{n}"),
            };
            let _ = write!(s, "  {:<22} {:<16} trials {}", c.name, status, c.trials);
            if let Some(note) = &c.note {
                let _ = write!(s, "  ({note})");
            }
            s.push('\n');
        }
        for k in &self.skipped {
            let _ = writeln!(s, "  {:<22} skipped: {}", k.name, k.reason);
        }
        let _ = writeln!(s, "  wall time {} ms", self.wall_time_ms);
        s
    }
}
