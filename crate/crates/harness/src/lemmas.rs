//! Property suites for the auxiliary lemmas and the collapse equivalences.
//! Large instance spaces are sampled with the job's seeded generator; small
//! ones are enumerated.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::seq::index;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use sigmaperm::lattice::LatticeQuotient;
use sigmaperm::sigma::{Block, Classical, SigmaContext, SigmaPartition};
use sigmaperm::{primes, SubId, SubgroupLattice};

use crate::budget::{Budget, Stop};
use crate::report::SuiteResult;

pub type Suites = BTreeMap<String, SuiteResult>;

fn suite<'a>(out: &'a mut Suites, name: &str) -> &'a mut SuiteResult {
    out.entry(name.to_string()).or_default()
}

/// All of `xs` when there are at most `n`, else `n` distinct picks in
/// their original order.
pub fn sample<T: Copy>(rng: &mut ChaCha8Rng, xs: &[T], n: usize) -> Vec<T> {
    if xs.len() <= n {
        return xs.to_vec();
    }
    let mut picks = index::sample(rng, xs.len(), n).into_vec();
    picks.sort_unstable();
    picks.into_iter().map(|i| xs[i]).collect()
}

/// All pairs when there are at most `n`, else `n` random pairs.
fn pairs<T: Copy>(rng: &mut ChaCha8Rng, xs: &[T], ys: &[T], n: usize) -> Vec<(T, T)> {
    if xs.is_empty() || ys.is_empty() {
        return Vec::new();
    }
    if xs.len() * ys.len() <= n {
        return xs
            .iter()
            .flat_map(|&x| ys.iter().map(move |&y| (x, y)))
            .collect();
    }
    (0..n)
        .map(|_| {
            (
                xs[rng.random_range(0..xs.len())],
                ys[rng.random_range(0..ys.len())],
            )
        })
        .collect()
}

/// A random superset of `base` inside `all`.
fn widen(rng: &mut ChaCha8Rng, base: &BTreeSet<Block>, all: &BTreeSet<Block>) -> BTreeSet<Block> {
    let mut pi = base.clone();
    for &b in all {
        if rng.random_bool(0.5) {
            pi.insert(b);
        }
    }
    pi
}

struct QuotientCase {
    n: SubId,
    q: LatticeQuotient,
    ctx: SigmaContext,
}

/// Suites that depend on the partition, for one `(G, σ)` job.
pub struct SigmaSuites<'a> {
    pub name: &'a str,
    pub ctx: &'a SigmaContext,
    pub samples: usize,
    pub quotients: usize,
    pub cutoff: u64,
}

impl SigmaSuites<'_> {
    fn tag(&self) -> String {
        format!("{} under {}", self.name, self.ctx.sigma())
    }

    fn quotient_cases(&self, rng: &mut ChaCha8Rng) -> Vec<QuotientCase> {
        let l = self.ctx.lattice();
        let top = l.top();
        let proper: Vec<SubId> = l
            .normal_subgroups(top)
            .into_iter()
            .filter(|&n| n != l.trivial() && n != top)
            .collect();
        sample(rng, &proper, self.quotients)
            .into_iter()
            .map(|n| {
                let q = l.quotient(n, self.cutoff).expect("quotient within cutoff");
                let ctx = SigmaContext::new(q.lattice.clone(), self.ctx.sigma().clone());
                QuotientCase { n, q, ctx }
            })
            .collect()
    }

    pub fn run(&self, rng: &mut ChaCha8Rng, budget: &Budget, out: &mut Suites) -> Result<(), Stop> {
        let ctx = self.ctx;
        let l = ctx.lattice();
        let top = l.top();
        let s = self.samples;
        let tag = self.tag();
        let all: Vec<SubId> = l.ids().collect();
        let sn: Vec<SubId> = all
            .iter()
            .copied()
            .filter(|&a| ctx.is_sigma_subnormal(a, top))
            .collect();
        let blocks = ctx.sigma_of(top);
        let sylow = ctx.is_sigma_full_of_sylow_type(top);
        let quotients = self.quotient_cases(rng);
        budget.check()?;

        // Lemma 2.2
        for (a, k) in pairs(rng, &sn, &all, s) {
            let ak = l.meet(a, k);
            suite(out, "lemma-2.2(1)").record(ctx.is_sigma_subnormal(ak, k), || {
                format!("{tag}: #{a} ∩ #{k} not σ-subnormal in #{k}")
            });
        }
        for (a, k) in pairs(rng, &sn, &sn, s) {
            let ok = ctx.is_sigma_subnormal(l.meet(a, k), top)
                && ctx.is_sigma_subnormal(l.join(a, k), top);
            suite(out, "lemma-2.2(3)").record(ok, || format!("{tag}: #{a}, #{k}"));
        }
        budget.check()?;
        for qc in &quotients {
            for a in sample(rng, &sn, s) {
                let image = qc.q.push(l, a);
                let ok = qc.ctx.is_sigma_subnormal(image, qc.ctx.top());
                suite(out, "lemma-2.2(4)").record(ok, || format!("{tag}: #{a} mod #{}", qc.n));
            }
        }
        let sn_nilpotent: Vec<SubId> = sn
            .iter()
            .copied()
            .filter(|&a| ctx.sigma_solubility(a).sigma_nilpotent)
            .collect();
        for a in sample(rng, &sn_nilpotent, s) {
            let below = l.below(a);
            for k in sample(rng, &below, 2) {
                let ok = ctx.is_sigma_subnormal(k, a) && ctx.is_sigma_subnormal(k, top);
                suite(out, "lemma-2.2(6)").record(ok, || format!("{tag}: #{k} ≤ #{a}"));
            }
        }
        for a in sample(rng, &sn, s) {
            let base = ctx
                .sigma()
                .classify(l.order(top) / l.order(a))
                .expect("nonzero index")
                .blocks;
            let pi = widen(rng, &base, &blocks);
            let ok = ctx.sigma_operators(a, &pi).o_upper == ctx.sigma_operators(top, &pi).o_upper;
            suite(out, "lemma-2.2(7)").record(ok, || format!("{tag}: #{a} with Π = {pi:?}"));
        }
        for a in sample(rng, &sn, s) {
            let pi = widen(rng, &ctx.sigma_of(a), &blocks);
            if ctx.is_pi_full(top, &pi) {
                let ok = l.le(a, ctx.sigma_operators(top, &pi).o_lower);
                suite(out, "lemma-2.2(8)").record(ok, || format!("{tag}: #{a} with Π = {pi:?}"));
            }
        }
        budget.check()?;

        // Lemma 2.3(4) and monotonicity of the σ-core
        for h in sample(rng, &all, s) {
            let core = ctx.sigma_core(h, top);
            let ok =
                ctx.is_sigma_permutable(core, top) && (!sylow || ctx.is_sigma_subnormal(core, top));
            suite(out, "lemma-2.3(4)").record(ok, || format!("{tag}: σ-core of #{h} is #{core}"));
            let mono = l.le(core, h)
                && ctx.sigma_core(core, top) == core
                && (!ctx.is_sigma_permutable(h, top) || ctx.is_weakly_sigma_permutable(h, top));
            suite(out, "monotonicity").record(mono, || format!("{tag}: #{h}"));
        }
        budget.check()?;

        // Lemma 2.4
        if ctx.is_sigma_full(top) {
            for &b in &blocks {
                let pi = BTreeSet::from([b]);
                let candidates: Vec<SubId> = all
                    .iter()
                    .copied()
                    .filter(|&h| ctx.is_pi_group(h, &pi))
                    .collect();
                let o = ctx.sigma_operators(top, &pi).o_upper;
                for h in sample(rng, &candidates, s) {
                    let ok = ctx.is_sigma_permutable(h, top) == l.le(o, l.normalizer(h, top));
                    suite(out, "lemma-2.4").record(ok, || format!("{tag}: #{h} in block {b}"));
                }
            }
        }
        budget.check()?;

        // Lemma 2.5
        if sylow {
            let weak: Vec<SubId> = sample(rng, &all, 4 * s)
                .into_iter()
                .filter(|&h| ctx.is_weakly_sigma_permutable(h, top))
                .collect();
            for h in sample(rng, &weak, s) {
                for k in sample(rng, &l.above(h), 2) {
                    let ok = ctx.is_weakly_sigma_permutable(h, k);
                    suite(out, "lemma-2.5(1)").record(ok, || format!("{tag}: #{h} ≤ #{k}"));
                }
            }
            budget.check()?;
            for qc in &quotients {
                let qtop = qc.ctx.top();
                for h in sample(rng, &l.above(qc.n), s) {
                    let up = ctx.is_weakly_sigma_permutable(h, top);
                    let down = qc.ctx.is_weakly_sigma_permutable(qc.q.push(l, h), qtop);
                    suite(out, "lemma-2.5(2)")
                        .record(up == down, || format!("{tag}: #{h} mod #{}", qc.n));
                }
                let coprime: Vec<SubId> = weak
                    .iter()
                    .copied()
                    .filter(|&h| primes::gcd(l.order(h), l.order(qc.n)) == 1)
                    .collect();
                for h in sample(rng, &coprime, s) {
                    let ok = qc.ctx.is_weakly_sigma_permutable(qc.q.push(l, h), qtop);
                    suite(out, "lemma-2.5(3)").record(ok, || format!("{tag}: #{h} mod #{}", qc.n));
                }
                budget.check()?;
            }
        }

        // Lemma 2.1: subgroups, quotients and extensions
        let soluble = ctx.sigma_solubility(top).sigma_soluble;
        if soluble {
            for k in sample(rng, &all, s) {
                suite(out, "lemma-2.1").record(ctx.sigma_solubility(k).sigma_soluble, || {
                    format!("{tag}: subgroup #{k}")
                });
            }
        }
        for qc in &quotients {
            let quotient_soluble = qc.ctx.sigma_solubility(qc.ctx.top()).sigma_soluble;
            let n_soluble = ctx.sigma_solubility(qc.n).sigma_soluble;
            let ok =
                (!soluble || quotient_soluble) && (!(quotient_soluble && n_soluble) || soluble);
            suite(out, "lemma-2.1").record(ok, || format!("{tag}: quotient by #{}", qc.n));
        }

        // Hall subgroups of soluble groups
        let hall = suite(out, "hall-sanity");
        if l.is_soluble(top) {
            hall.record(sylow, || {
                format!("{tag}: soluble but not σ-full of Sylow type")
            });
        }
        for &b in &blocks {
            for h in ctx.hall_for_block(top, b) {
                let (order, index) = (l.order(h), l.order(top) / l.order(h));
                hall.record(primes::gcd(order, index) == 1, || {
                    format!("{tag}: Hall #{h} has order {order}, index {index}")
                });
            }
        }
        Ok(())
    }
}

/// Singleton partition against the classical notions, over every subgroup.
pub fn singleton_collapse(name: &str, ctx: &SigmaContext, cl: &Classical, out: &mut Suites) {
    let l = ctx.lattice();
    let top = l.top();
    let r = suite(out, "singleton-collapse");
    for h in l.ids() {
        let sol = ctx.sigma_solubility(h);
        let checks = [
            (
                "subnormal",
                ctx.is_sigma_subnormal(h, top),
                l.is_subnormal(h, top),
            ),
            (
                "s-permutable",
                ctx.is_sigma_permutable(h, top),
                cl.is_s_permutable(h, top),
            ),
            (
                "weakly s-permutable",
                ctx.is_weakly_sigma_permutable(h, top),
                cl.is_weakly_s_permutable(h, top),
            ),
            ("soluble", sol.sigma_soluble, l.is_soluble(h)),
            ("nilpotent", sol.sigma_nilpotent, l.is_nilpotent(h)),
        ];
        let bad: Vec<&str> = checks.iter().filter(|c| c.1 != c.2).map(|c| c.0).collect();
        r.record(bad.is_empty(), || {
            format!("{name}: #{h} differs on {bad:?}")
        });
    }
}

/// One block covering π(G): everything is σ-subnormal and σ-permutable.
pub fn one_block_collapse(name: &str, lattice: &Arc<SubgroupLattice>, out: &mut Suites) {
    let top = lattice.top();
    let ps = primes::prime_divisors(lattice.order(top));
    let ctx = SigmaContext::new(lattice.clone(), SigmaPartition::whole(&ps));
    let r = suite(out, "one-block-collapse");
    let sol = ctx.sigma_solubility(top);
    r.record(sol.sigma_soluble && sol.sigma_nilpotent, || {
        format!("{name}: not σ-nilpotent")
    });
    for h in lattice.ids() {
        let ok = ctx.is_sigma_subnormal(h, top) && ctx.is_sigma_permutable(h, top);
        r.record(ok, || format!("{name}: #{h}"));
    }
}

/// Normal p-subgroups `P`: `P/Φ(P) ≤ Z_𝔘(G/Φ(P))` forces `P ≤ Z_𝔘(G)`.
pub fn lemma_2_6(
    name: &str,
    cl: &Classical,
    rng: &mut ChaCha8Rng,
    samples: usize,
    cutoff: u64,
    out: &mut Suites,
) {
    let l = cl.lattice();
    let top = l.top();
    let candidates: Vec<SubId> = l
        .normal_subgroups(top)
        .into_iter()
        .filter(|&p| p != l.trivial() && l.is_p_group(p))
        .collect();
    let zu = cl.z_u_hypercentre(top);
    for p in sample(rng, &candidates, samples) {
        let phi = l.frattini(p);
        let q = l.quotient(phi, cutoff).expect("quotient within cutoff");
        let qcl = Classical::new(q.lattice.clone());
        let hypothesis = q
            .lattice
            .le(q.push(l, p), qcl.z_u_hypercentre(q.lattice.top()));
        suite(out, "lemma-2.6").record(!hypothesis || l.le(p, zu), || format!("{name}: #{p}"));
    }
}
