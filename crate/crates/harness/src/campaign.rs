//! Campaigns: every check over a corpus and a family of partitions.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sigmaperm::catalog::CatalogEntry;
use sigmaperm::sigma::{Classical, SigmaContext, SigmaPartition};
use sigmaperm::{primes, Result, SubgroupLattice, DEFAULT_LATTICE_CUTOFF};

use crate::budget::{Budget, Stop};
use crate::corollaries::check_corollaries;
use crate::example;
use crate::lemmas::{self, SigmaSuites, Suites};
use crate::report::{ConfigEcho, ReproBundle, SkippedJob, TheoremOutcome, VerificationReport};
use crate::theorems::Checker;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionPolicy {
    All,
    Singletons,
    Whole,
    /// One partition given as text, completed per group.
    Listed(String),
}

impl PartitionPolicy {
    pub fn partitions(&self, order: u64) -> Result<Vec<SigmaPartition>> {
        let ps = primes::prime_divisors(order);
        Ok(match self {
            PartitionPolicy::All => SigmaPartition::all_partitions(&ps),
            PartitionPolicy::Singletons => vec![SigmaPartition::singletons(&ps)],
            PartitionPolicy::Whole => vec![SigmaPartition::whole(&ps)],
            PartitionPolicy::Listed(text) => vec![SigmaPartition::parse(text, order)?],
        })
    }
}

impl fmt::Display for PartitionPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartitionPolicy::All => write!(f, "all"),
            PartitionPolicy::Singletons => write!(f, "singletons"),
            PartitionPolicy::Whole => write!(f, "whole"),
            PartitionPolicy::Listed(s) => write!(f, "listed({s})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CampaignConfig {
    /// Echoed into the report; the corpus itself is passed separately.
    pub max_order: u64,
    pub seed: u64,
    pub samples_per_suite: usize,
    /// Proper nontrivial normal subgroups sampled per job for quotient suites.
    pub quotients: usize,
    pub budget: Option<Duration>,
    pub verify_witnesses: bool,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    pub cutoff: u64,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            max_order: 200,
            seed: 0x5167_6d61,
            samples_per_suite: 12,
            quotients: 2,
            budget: Some(Duration::from_secs(120)),
            verify_witnesses: true,
            jobs: None,
            cutoff: DEFAULT_LATTICE_CUTOFF,
        }
    }
}

/// What one job contributes to the report.
#[derive(Default)]
struct JobResult {
    outcomes: Vec<TheoremOutcome>,
    suites: Suites,
    skipped: Vec<SkippedJob>,
    jobs: usize,
}

impl JobResult {
    fn absorb(&mut self, other: JobResult) {
        self.outcomes.extend(other.outcomes);
        for (k, v) in other.suites {
            self.suites.entry(k).or_default().merge(&v);
        }
        self.skipped.extend(other.skipped);
        self.jobs += other.jobs;
    }

    fn skip(name: &str, partition: &str, reason: String) -> Self {
        JobResult {
            skipped: vec![SkippedJob {
                group_name: name.to_string(),
                partition: partition.to_string(),
                reason,
            }],
            jobs: 1,
            ..Default::default()
        }
    }
}

fn stop_reason(s: Stop, budget: Option<Duration>) -> String {
    match s {
        Stop::OutOfTime => format!(
            "budget of {} ms exceeded",
            budget.map_or(0, |d| d.as_millis())
        ),
        Stop::Aborted => "campaign aborted after a counterexample".into(),
    }
}

/// The job's private generator: one stream per (group, job) under the seed.
fn rng_for(seed: u64, group: usize, job: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((group as u64) << 16) | job as u64);
    rng
}

const GROUP_LEVEL: &str = "group-level";

struct Campaign<'a> {
    config: &'a CampaignConfig,
    policy: &'a PartitionPolicy,
    abort: AtomicBool,
}

impl Campaign<'_> {
    fn group_level(
        &self,
        gi: usize,
        entry: &CatalogEntry,
        lattice: &Arc<SubgroupLattice>,
    ) -> JobResult {
        let c = self.config;
        let budget = Budget::new(c.budget, &self.abort);
        let name = entry.name.as_str();
        let mut r = JobResult {
            jobs: 1,
            ..Default::default()
        };
        let run = |r: &mut JobResult| -> std::result::Result<(), Stop> {
            let cl = Classical::new(lattice.clone());
            r.outcomes.extend(check_corollaries(name, &cl));
            budget.check()?;
            let ps = primes::prime_divisors(lattice.order(lattice.top()));
            let singles = SigmaContext::new(lattice.clone(), SigmaPartition::singletons(&ps));
            lemmas::singleton_collapse(name, &singles, &cl, &mut r.suites);
            budget.check()?;
            lemmas::one_block_collapse(name, lattice, &mut r.suites);
            budget.check()?;
            let mut rng = rng_for(c.seed, gi, 0xffff);
            lemmas::lemma_2_6(
                name,
                &cl,
                &mut rng,
                c.samples_per_suite,
                c.cutoff,
                &mut r.suites,
            );
            if entry.tags.contains("example-1.2") {
                let start = Instant::now();
                let claims = example::example_1_2_claims().expect("example group builds");
                let outcomes = example::claim_outcomes(&claims, start.elapsed().as_millis() as u64);
                let suite = r.suites.entry("example-1.2".into()).or_default();
                for cl in &claims {
                    suite.record(cl.holds, || {
                        format!("({}) {}: {}", cl.label, cl.statement, cl.detail)
                    });
                }
                r.outcomes.extend(outcomes);
            }
            Ok(())
        };
        if let Err(s) = run(&mut r) {
            r.skipped.push(SkippedJob {
                group_name: name.to_string(),
                partition: GROUP_LEVEL.into(),
                reason: stop_reason(s, c.budget),
            });
        }
        r
    }

    fn sigma_job(
        &self,
        gi: usize,
        ji: usize,
        name: &str,
        lattice: &Arc<SubgroupLattice>,
        sigma: SigmaPartition,
    ) -> JobResult {
        let c = self.config;
        let budget = Budget::new(c.budget, &self.abort);
        let label = sigma.to_string();
        let ctx = Arc::new(SigmaContext::new(lattice.clone(), sigma));
        let checker = Checker::new(name, ctx.clone(), c.verify_witnesses);
        let mut r = JobResult {
            jobs: 1,
            ..Default::default()
        };
        let run = |r: &mut JobResult| -> std::result::Result<(), Stop> {
            let top = lattice.top();
            let normals = lattice.normal_subgroups(top);
            r.outcomes.push(checker.theorem_1_4());
            budget.check()?;
            let t15 = checker.theorem_1_5();
            budget.check()?;
            let t13 = checker.theorem_1_13(&normals);
            budget.check()?;
            let at_top = normals
                .iter()
                .position(|&e| e == top)
                .expect("G is normal in G");
            let cross = checker.cross_check(&t13[at_top], &t15);
            r.outcomes.push(t15);
            r.outcomes.extend(t13);
            r.outcomes.push(cross);
            r.outcomes.extend(checker.corollary_1_14(&normals));
            budget.check()?;
            r.outcomes.push(checker.proposition_4_1());
            budget.check()?;
            let mut rng = rng_for(c.seed, gi, ji);
            SigmaSuites {
                name,
                ctx: &ctx,
                samples: c.samples_per_suite,
                quotients: c.quotients,
                cutoff: c.cutoff,
            }
            .run(&mut rng, &budget, &mut r.suites)
        };
        let result = run(&mut r);
        let witnesses = checker.witness_suite();
        if witnesses.instances > 0 {
            r.suites
                .entry("witness-verification".into())
                .or_default()
                .merge(&witnesses);
        }
        if let Err(s) = result {
            r.skipped.push(SkippedJob {
                group_name: name.to_string(),
                partition: label,
                reason: stop_reason(s, c.budget),
            });
        }
        r
    }

    fn group(&self, gi: usize, entry: &CatalogEntry) -> JobResult {
        if self.abort.load(Ordering::Relaxed) {
            return JobResult::skip(&entry.name, GROUP_LEVEL, stop_reason(Stop::Aborted, None));
        }
        let partitions = match self.policy.partitions(entry.group.order()) {
            Ok(p) => p,
            Err(e) => return JobResult::skip(&entry.name, &self.policy.to_string(), e.to_string()),
        };
        let lattice = match SubgroupLattice::new(&entry.group, self.config.cutoff) {
            Ok(l) => Arc::new(l),
            Err(e) => return JobResult::skip(&entry.name, GROUP_LEVEL, e.to_string()),
        };
        let mut result = self.group_level(gi, entry, &lattice);
        let jobs: Vec<JobResult> = partitions
            .into_par_iter()
            .enumerate()
            .map(|(ji, sigma)| {
                let r = self.sigma_job(gi, ji, &entry.name, &lattice, sigma);
                if r.outcomes.iter().any(|o| !o.consistent) {
                    self.abort.store(true, Ordering::Relaxed);
                }
                r
            })
            .collect();
        if result.outcomes.iter().any(|o| !o.consistent) {
            self.abort.store(true, Ordering::Relaxed);
        }
        for j in jobs {
            result.absorb(j);
        }
        result
    }
}

/// Runs every check over `corpus` × the partitions chosen by `policy`.
/// The first inconsistent outcome stops the campaign and is bundled for
/// replay; jobs cut short are listed and the report is marked partial.
pub fn run_campaign(
    corpus: &[CatalogEntry],
    policy: &PartitionPolicy,
    config: &CampaignConfig,
) -> VerificationReport {
    let start = Instant::now();
    let campaign = Campaign {
        config,
        policy,
        abort: AtomicBool::new(false),
    };
    let sweep = || -> Vec<JobResult> {
        corpus
            .par_iter()
            .enumerate()
            .map(|(gi, entry)| campaign.group(gi, entry))
            .collect()
    };
    let results = match config.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(sweep),
        None => sweep(),
    };

    let mut report = VerificationReport::new(ConfigEcho {
        max_order: config.max_order,
        policy: policy.to_string(),
        groups: corpus.len(),
        seed: config.seed,
        samples_per_suite: config.samples_per_suite,
        budget_ms: config.budget.map_or(0, |d| d.as_millis() as u64),
        verify_witnesses: config.verify_witnesses,
    });
    let mut all = JobResult::default();
    for r in results {
        all.absorb(r);
    }
    let by_name: BTreeMap<&str, &CatalogEntry> =
        corpus.iter().map(|e| (e.name.as_str(), e)).collect();
    report.counterexample = all.outcomes.iter().find(|o| !o.consistent).map(|o| {
        let g = &by_name[o.group_name.as_str()].group;
        ReproBundle {
            outcome: o.clone(),
            degree: g.degree(),
            generators: g.generators().iter().map(|p| p.to_string()).collect(),
        }
    });
    report.outcomes = all.outcomes;
    report.suite_results = all.suites;
    report.skipped = all.skipped;
    report.totals.jobs = all.jobs;
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    report.finish();
    report
}
