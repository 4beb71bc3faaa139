//! Acceptance gate: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use sigmaperm::catalog::{self, corpus};
use sigmaperm::sigma::{SigmaContext, SigmaPartition};
use sigmaperm::{primes, FiniteGroup, Permutation, SubgroupLattice, DEFAULT_LATTICE_CUTOFF};
use sigmaperm_harness::{
    example_1_2_report, run_campaign, CampaignConfig, PartitionPolicy, VerificationReport,
};

const LEMMA_SUITES: [&str; 15] = [
    "lemma-2.1",
    "lemma-2.2(1)",
    "lemma-2.2(3)",
    "lemma-2.2(4)",
    "lemma-2.2(6)",
    "lemma-2.2(7)",
    "lemma-2.2(8)",
    "lemma-2.3(4)",
    "lemma-2.4",
    "lemma-2.5(1)",
    "lemma-2.5(2)",
    "lemma-2.5(3)",
    "lemma-2.6",
    "monotonicity",
    "witness-verification",
];

const STATEMENTS: [&str; 16] = [
    "theorem-1.4",
    "theorem-1.5",
    "theorem-1.13",
    "proposition-4.1",
    "cross-check-1.13-1.5",
    "corollary-1.6",
    "corollary-1.7",
    "corollary-1.8",
    "corollary-1.9",
    "corollary-1.10",
    "corollary-1.11",
    "corollary-1.12",
    "corollary-1.14",
    "corollary-1.15",
    "corollary-1.16",
    "corollary-1.17",
];

type Verdict = Result<String, String>;

fn check(ok: bool, pass: String, fail: String) -> Verdict {
    if ok {
        Ok(pass)
    } else {
        Err(fail)
    }
}

fn example() -> Verdict {
    let start = Instant::now();
    let r = example_1_2_report().map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let failed: Vec<String> = r
        .outcomes
        .iter()
        .filter(|o| !o.consistent)
        .map(|o| o.theorem_id.clone())
        .collect();
    check(
        r.outcomes.len() == 7 && failed.is_empty() && elapsed < Duration::from_secs(600),
        format!("claims (a)-(g) hold in {:.1} s", elapsed.as_secs_f64()),
        format!(
            "{} claims evaluated, failing {failed:?}, {:.1} s",
            r.outcomes.len(),
            elapsed.as_secs_f64()
        ),
    )
}

fn singleton_collapse(r: &VerificationReport, subgroups: u64) -> Verdict {
    let s = r
        .suite_results
        .get("singleton-collapse")
        .cloned()
        .unwrap_or_default();
    check(
        s.failed == 0 && s.instances == subgroups && r.skipped.is_empty(),
        format!("{} subgroups, zero disagreements", s.instances),
        format!(
            "{} of {subgroups} subgroups checked, {} disagreements {:?}",
            s.instances, s.failed, s.failures
        ),
    )
}

fn theorem_sweeps(r: &VerificationReport, elapsed: Duration) -> Verdict {
    let seen: BTreeSet<&str> = r.outcomes.iter().map(|o| o.theorem_id.as_str()).collect();
    let missing: Vec<&str> = STATEMENTS
        .iter()
        .copied()
        .filter(|s| !seen.contains(s))
        .collect();
    check(
        r.totals.inconsistent == 0
            && missing.is_empty()
            && !r.partial
            && elapsed < Duration::from_secs(1800),
        format!(
            "{} outcomes over {} jobs, none inconsistent, {:.0} s",
            r.totals.outcomes,
            r.totals.jobs,
            elapsed.as_secs_f64()
        ),
        format!(
            "inconsistent {}, missing {missing:?}, partial {}, {:.0} s, counterexample {:?}",
            r.totals.inconsistent,
            r.partial,
            elapsed.as_secs_f64(),
            r.counterexample
        ),
    )
}

fn lemma_suites(r: &VerificationReport) -> Verdict {
    let mut bad = Vec::new();
    let mut fewest = u64::MAX;
    for name in LEMMA_SUITES {
        let s = r.suite_results.get(name).cloned().unwrap_or_default();
        fewest = fewest.min(s.instances);
        if s.failed > 0 || s.instances < 100 {
            bad.push(format!(
                "{name}: {}/{} {:?}",
                s.passed, s.instances, s.failures
            ));
        }
    }
    check(
        bad.is_empty(),
        format!(
            "{} suites pass, smallest has {fewest} instances",
            LEMMA_SUITES.len()
        ),
        bad.join("; "),
    )
}

/// Closure of the cyclic subgroups under joins, using only generator sets.
fn brute_force_count(g: &FiniteGroup) -> usize {
    let key = |h: &FiniteGroup| {
        let mut v: Vec<Permutation> = h.elements().unwrap().as_ref().clone();
        v.sort();
        v
    };
    let mut seen = BTreeSet::new();
    let mut found = Vec::new();
    for x in g.elements().unwrap().iter() {
        let c = FiniteGroup::from_generators(g.degree(), vec![x.clone()]).unwrap();
        if seen.insert(key(&c)) {
            found.push(c);
        }
    }
    let cyclic = found.clone();
    let mut i = 0;
    while i < found.len() {
        for c in &cyclic {
            let j = found[i].join(c).unwrap();
            if seen.insert(key(&j)) {
                found.push(j);
            }
        }
        i += 1;
    }
    found.len()
}

fn ground_truth() -> Verdict {
    let mut notes = Vec::new();
    let mut ok = true;
    for (name, g, expected) in [
        ("S4", catalog::symmetric(4), 30),
        ("F21", catalog::frobenius21(), 10),
        ("A5", catalog::alternating(5), 59),
    ] {
        let brute = brute_force_count(&g);
        let engine = SubgroupLattice::new(&g, DEFAULT_LATTICE_CUTOFF)
            .unwrap()
            .len();
        ok &= brute == expected && engine == expected;
        notes.push(format!("{name} {engine}/{brute}"));
    }
    let ex = catalog::example_1_2();
    let l = std::sync::Arc::new(SubgroupLattice::new(&ex.g, DEFAULT_LATTICE_CUTOFF).unwrap());
    let ctx = SigmaContext::new(l.clone(), SigmaPartition::parse("2,3,5|7", 1260).unwrap());
    let a5c3 = l.find(&ex.a5c3).unwrap();
    let halls = ctx.hall_for_block(l.top(), 0);
    let hall_ok =
        l.order(a5c3) == 180 && halls.contains(&a5c3) && halls.iter().all(|&h| l.order(h) == 180);
    ok &= hall_ok;
    notes.push(format!("|A5C3| = {}", l.order(a5c3)));
    check(ok, notes.join(", "), notes.join(", "))
}

fn hall_sanity(r: &VerificationReport, soluble_pairs: u64) -> Verdict {
    let s = r
        .suite_results
        .get("hall-sanity")
        .cloned()
        .unwrap_or_default();
    check(
        s.failed == 0 && s.instances >= soluble_pairs,
        format!(
            "{} checks ({soluble_pairs} soluble group/partition pairs), all pass",
            s.instances
        ),
        format!("{} failed of {}: {:?}", s.failed, s.instances, s.failures),
    )
}

fn determinism() -> Verdict {
    let c = corpus(60).unwrap();
    let cfg = CampaignConfig {
        max_order: 60,
        ..Default::default()
    };
    let a = run_campaign(&c, &PartitionPolicy::All, &cfg)
        .without_timings()
        .to_json();
    let b = run_campaign(&c, &PartitionPolicy::All, &cfg)
        .without_timings()
        .to_json();
    check(
        a == b,
        format!(
            "two corpus(60) runs agree byte for byte ({} bytes)",
            a.len()
        ),
        "reports differ".into(),
    )
}

fn main() {
    let mut results: Vec<(&str, Verdict)> = Vec::new();
    results.push(("1 worked example on the order-1260 group", example()));

    let groups = corpus(200).expect("corpus builds");
    let mut subgroups = 0u64;
    let mut soluble_pairs = 0u64;
    for e in &groups {
        let l = SubgroupLattice::new(&e.group, DEFAULT_LATTICE_CUTOFF).expect("within cutoff");
        subgroups += l.len() as u64;
        if l.is_soluble(l.top()) {
            let ps = primes::prime_divisors(e.group.order());
            soluble_pairs += SigmaPartition::all_partitions(&ps).len() as u64;
        }
    }
    let cfg = CampaignConfig::default();
    let start = Instant::now();
    let report = run_campaign(&groups, &PartitionPolicy::All, &cfg);
    let elapsed = start.elapsed();

    results.push((
        "2 singleton partition equals the classical notions",
        singleton_collapse(&report, subgroups),
    ));
    results.push((
        "3 theorem and corollary sweeps over corpus(200)",
        theorem_sweeps(&report, elapsed),
    ));
    results.push(("4 lemma suites over corpus(200)", lemma_suites(&report)));
    results.push(("5 engine ground truth", ground_truth()));
    results.push(("6 Hall sanity", hall_sanity(&report, soluble_pairs)));
    results.push(("7 determinism", determinism()));

    let mut failed = 0;
    for (name, v) in &results {
        match v {
            Ok(m) => println!("PASS  criterion {name}: {m}"),
            Err(m) => {
                failed += 1;
                println!("FAIL  criterion {name}: {m}")
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        results.len() - failed,
        results.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
