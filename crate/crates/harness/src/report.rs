use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// Identifier of the report layout; bumped whenever a field changes.
pub const SCHEMA_VERSION: &str = "sigmaperm-report/1";

/// The JSON Schema describing [`VerificationReport`].
pub const SCHEMA: &str = include_str!("../schema/report.schema.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSummary {
    pub kind: String,
    /// Orders of the groups in the certificate, in payload order.
    pub orders: Vec<u64>,
    /// Result of the independent re-check, when one was run.
    pub verified: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremOutcome {
    pub theorem_id: String,
    pub group_name: String,
    pub partition: String,
    /// The subgroup the statement is about, when it has one (for example
    /// the normal subgroup `E`).
    pub subject: Option<String>,
    pub hypothesis_holds: bool,
    /// The hypothesis under the universal reading of σ-permutability, where
    /// it was evaluated.
    pub universal_hypothesis: Option<bool>,
    pub conclusion_holds: bool,
    pub consistent: bool,
    pub reason: Option<String>,
    pub witnesses: Vec<WitnessSummary>,
    pub elapsed_ms: u64,
}

impl TheoremOutcome {
    pub fn new(
        theorem_id: &str,
        group_name: &str,
        partition: &str,
        hypothesis: bool,
        conclusion: bool,
    ) -> Self {
        TheoremOutcome {
            theorem_id: theorem_id.to_string(),
            group_name: group_name.to_string(),
            partition: partition.to_string(),
            subject: None,
            hypothesis_holds: hypothesis,
            universal_hypothesis: None,
            conclusion_holds: conclusion,
            consistent: !hypothesis || conclusion,
            reason: None,
            witnesses: Vec::new(),
            elapsed_ms: 0,
        }
    }

    pub fn readings_disagree(&self) -> bool {
        self.universal_hypothesis
            .is_some_and(|u| u != self.hypothesis_holds)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub instances: u64,
    pub passed: u64,
    pub failed: u64,
    /// The first few failure descriptions.
    pub failures: Vec<String>,
}

const MAX_FAILURE_NOTES: usize = 10;

impl SuiteResult {
    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            if self.failures.len() < MAX_FAILURE_NOTES {
                self.failures.push(describe());
            }
        }
    }

    pub fn merge(&mut self, other: &SuiteResult) {
        self.instances += other.instances;
        self.passed += other.passed;
        self.failed += other.failed;
        for f in &other.failures {
            if self.failures.len() < MAX_FAILURE_NOTES {
                self.failures.push(f.clone());
            }
        }
    }
}

/// Everything needed to replay an inconsistent outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReproBundle {
    pub outcome: TheoremOutcome,
    pub degree: usize,
    /// Generators of the group in cycle notation.
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedJob {
    pub group_name: String,
    pub partition: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub max_order: u64,
    pub policy: String,
    pub groups: usize,
    pub seed: u64,
    pub samples_per_suite: usize,
    pub budget_ms: u64,
    pub verify_witnesses: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Versions {
    pub schema: String,
    pub sigmaperm: String,
    pub harness: String,
}

impl Default for Versions {
    fn default() -> Self {
        Versions {
            schema: SCHEMA_VERSION.to_string(),
            sigmaperm: sigmaperm_version().to_string(),
            harness: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

fn sigmaperm_version() -> &'static str {
    // both crates share the workspace version
    env!("CARGO_PKG_VERSION")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub outcomes: usize,
    pub hypothesis_held: usize,
    pub inconsistent: usize,
    pub reading_disagreements: usize,
    pub suite_failures: u64,
    pub jobs: usize,
    pub skipped_jobs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub versions: Versions,
    pub config: ConfigEcho,
    pub outcomes: Vec<TheoremOutcome>,
    pub suite_results: BTreeMap<String, SuiteResult>,
    pub totals: Totals,
    /// Set when the budget cut jobs short or a counterexample aborted the run.
    pub partial: bool,
    pub skipped: Vec<SkippedJob>,
    pub counterexample: Option<ReproBundle>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn new(config: ConfigEcho) -> Self {
        VerificationReport {
            versions: Versions::default(),
            config,
            outcomes: Vec::new(),
            suite_results: BTreeMap::new(),
            totals: Totals {
                outcomes: 0,
                hypothesis_held: 0,
                inconsistent: 0,
                reading_disagreements: 0,
                suite_failures: 0,
                jobs: 0,
                skipped_jobs: 0,
            },
            partial: false,
            skipped: Vec::new(),
            counterexample: None,
            elapsed_ms: 0,
        }
    }

    pub fn suite_mut(&mut self, name: &str) -> &mut SuiteResult {
        self.suite_results.entry(name.to_string()).or_default()
    }

    /// Recomputes [`Totals`] from the outcome list and suites.
    pub fn finish(&mut self) {
        let t = &mut self.totals;
        t.outcomes = self.outcomes.len();
        t.hypothesis_held = self.outcomes.iter().filter(|o| o.hypothesis_holds).count();
        t.inconsistent = self.outcomes.iter().filter(|o| !o.consistent).count();
        t.reading_disagreements = self
            .outcomes
            .iter()
            .filter(|o| o.readings_disagree())
            .count();
        t.suite_failures = self.suite_results.values().map(|s| s.failed).sum();
        t.skipped_jobs = self.skipped.len();
        self.partial |= !self.skipped.is_empty() || self.counterexample.is_some();
    }

    /// No inconsistent outcome, no failed suite instance, nothing skipped.
    pub fn passed(&self) -> bool {
        self.totals.inconsistent == 0 && self.totals.suite_failures == 0 && !self.partial
    }

    /// The report with every timing field zeroed.
    pub fn without_timings(&self) -> VerificationReport {
        let mut r = self.clone();
        r.elapsed_ms = 0;
        for o in &mut r.outcomes {
            o.elapsed_ms = 0;
        }
        if let Some(b) = &mut r.counterexample {
            b.outcome.elapsed_ms = 0;
        }
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// Human-readable summary: one line per theorem, one per suite.
    pub fn to_text(&self) -> String {
        let mut by_theorem: BTreeMap<&str, (usize, usize, usize)> = BTreeMap::new();
        for o in &self.outcomes {
            let e = by_theorem.entry(&o.theorem_id).or_default();
            e.0 += 1;
            e.1 += o.hypothesis_holds as usize;
            e.2 += (!o.consistent) as usize;
        }
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:<24} {:>9} {:>11} {:>13}",
            "statement", "outcomes", "hypothesis", "inconsistent"
        );
        for (id, (n, h, bad)) in &by_theorem {
            let _ = writeln!(s, "{id:<24} {n:>9} {h:>11} {bad:>13}");
        }
        let _ = writeln!(s);
        let _ = writeln!(
            s,
            "{:<24} {:>9} {:>11} {:>13}",
            "suite", "instances", "passed", "failed"
        );
        for (name, r) in &self.suite_results {
            let _ = writeln!(
                s,
                "{name:<24} {:>9} {:>11} {:>13}",
                r.instances, r.passed, r.failed
            );
            for f in &r.failures {
                let _ = writeln!(s, "    {f}");
            }
        }
        let t = &self.totals;
        let _ = writeln!(s);
        let _ = writeln!(
            s,
            "jobs {}  skipped {}  outcomes {}  inconsistent {}  reading disagreements {}  suite failures {}",
            t.jobs, t.skipped_jobs, t.outcomes, t.inconsistent, t.reading_disagreements, t.suite_failures
        );
        if let Some(b) = &self.counterexample {
            let _ = writeln!(
                s,
                "COUNTEREXAMPLE: {} on {} with sigma {}",
                b.outcome.theorem_id, b.outcome.group_name, b.outcome.partition
            );
        }
        let _ = writeln!(s, "result: {}", if self.passed() { "PASS" } else { "FAIL" });
        s
    }
}
