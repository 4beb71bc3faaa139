//! Implication checks. Each check evaluates a hypothesis and a conclusion on
//! one group and reports whether the implication holds.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex};
use std::time::Instant;

use sigmaperm::sigma::{Block, Classical, Reading, SigmaContext, SigmaPartition, SigmaWitness};
use sigmaperm::{primes, SubId, SubgroupLattice};

use crate::report::{SuiteResult, TheoremOutcome, WitnessSummary};

pub const THEOREM_1_4: &str = "theorem-1.4";
pub const THEOREM_1_5: &str = "theorem-1.5";
pub const THEOREM_1_13: &str = "theorem-1.13";
pub const PROPOSITION_4_1: &str = "proposition-4.1";
pub const COROLLARY_1_14: &str = "corollary-1.14";
pub const CROSS_CHECK_1_13_1_5: &str = "cross-check-1.13-1.5";

/// Everything the checks need for one group and one partition.
pub struct Checker {
    name: String,
    lattice: Arc<SubgroupLattice>,
    ctx: Arc<SigmaContext>,
    universal: SigmaContext,
    verify_witnesses: bool,
    verified: Mutex<HashMap<SubId, WitnessSummary>>,
    witness_suite: Mutex<SuiteResult>,
}

pub fn summarize(w: &SigmaWitness, verified: Option<bool>) -> WitnessSummary {
    let orders = match w {
        SigmaWitness::SubnormalChain { chain } => chain.iter().map(|g| g.order()).collect(),
        SigmaWitness::HallSet { members } => members.iter().map(|g| g.order()).collect(),
        SigmaWitness::SupplementT {
            t,
            chain,
            core_parts,
        } => std::iter::once(t.order())
            .chain(chain.iter().map(|g| g.order()))
            .chain(core_parts.iter().map(|p| p.subgroup.order()))
            .collect(),
        SigmaWitness::CoreGenerators { core, parts } => std::iter::once(core.order())
            .chain(parts.iter().map(|p| p.subgroup.order()))
            .collect(),
    };
    WitnessSummary {
        kind: format!("{:?}", w.kind()),
        orders,
        verified,
    }
}

fn subject(l: &SubgroupLattice, id: SubId) -> String {
    format!("#{id} (order {})", l.order(id))
}

impl Checker {
    pub fn new(name: &str, ctx: Arc<SigmaContext>, verify_witnesses: bool) -> Self {
        let lattice = ctx.shared_lattice();
        let universal =
            SigmaContext::with_reading(lattice.clone(), ctx.sigma().clone(), Reading::Universal);
        Checker {
            name: name.to_string(),
            lattice,
            ctx,
            universal,
            verify_witnesses,
            verified: Mutex::new(HashMap::new()),
            witness_suite: Mutex::new(SuiteResult::default()),
        }
    }

    pub fn context(&self) -> &SigmaContext {
        &self.ctx
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        &self.lattice
    }

    fn sigma(&self) -> &SigmaPartition {
        self.ctx.sigma()
    }

    /// Witness re-verification tallies so far.
    pub fn witness_suite(&self) -> SuiteResult {
        self.witness_suite.lock().expect("suite lock").clone()
    }

    fn outcome(&self, id: &str, hypothesis: bool, conclusion: bool) -> TheoremOutcome {
        TheoremOutcome::new(
            id,
            &self.name,
            &self.sigma().to_string(),
            hypothesis,
            conclusion,
        )
    }

    /// Re-checks the weak σ-permutability certificate of `h` once per job.
    fn verify_weak(&self, h: SubId) -> WitnessSummary {
        if let Some(s) = self.verified.lock().expect("cache lock").get(&h) {
            return s.clone();
        }
        let top = self.lattice.top();
        let w = self.ctx.weak_witness(h, top).expect("positive answer");
        let verified = self.verify_witnesses.then(|| {
            let ok = w
                .verify(
                    &self.lattice.to_group(h),
                    &self.lattice.to_group(top),
                    self.sigma(),
                )
                .unwrap_or(false);
            self.witness_suite
                .lock()
                .expect("suite lock")
                .record(ok, || {
                    format!("{}: weak witness of #{h} under {}", self.name, self.sigma())
                });
            ok
        });
        let s = summarize(&w, verified);
        self.verified
            .lock()
            .expect("cache lock")
            .insert(h, s.clone());
        s
    }

    /// Attaches verified certificates for every subgroup in `used`. A failed
    /// re-check withdraws the hypothesis.
    fn attach(&self, o: &mut TheoremOutcome, used: &BTreeSet<SubId>) {
        for &h in used {
            let s = self.verify_weak(h);
            if s.verified == Some(false) {
                o.hypothesis_holds = false;
                o.consistent = !o.hypothesis_holds || o.conclusion_holds;
                o.reason = Some(format!("certificate for #{h} failed re-verification"));
            }
            o.witnesses.push(s);
        }
    }

    fn sylow_type(&self) -> bool {
        self.ctx.is_sigma_full_of_sylow_type(self.lattice.top())
    }

    fn blocks(&self) -> BTreeSet<Block> {
        self.ctx.sigma_of(self.lattice.top())
    }

    fn nilpotent_halls(&self, b: Block) -> Vec<SubId> {
        let top = self.lattice.top();
        self.ctx
            .hall_for_block(top, b)
            .into_iter()
            .filter(|&h| self.lattice.is_nilpotent(h))
            .collect()
    }

    /// Every maximal subgroup of `w` is weakly σ-permutable in G; the
    /// subgroups relied on are added to `used`.
    fn maximals_weak(&self, ctx: &SigmaContext, w: SubId, used: &mut BTreeSet<SubId>) -> bool {
        let top = self.lattice.top();
        let maxes = self.lattice.maximal_subgroups(w);
        if maxes
            .iter()
            .all(|&m| ctx.is_weakly_sigma_permutable(m, top))
        {
            used.extend(maxes);
            true
        } else {
            false
        }
    }

    /// Existential and universal evaluation of "some complete Hall σ-set of
    /// nilpotent members satisfies `cond` in every member", which factorises
    /// over the blocks. `None` when no nilpotent complete Hall σ-set exists.
    fn nilpotent_hall_condition(
        &self,
        blocks: &BTreeSet<Block>,
        cond: impl Fn(&SigmaContext, SubId, &mut BTreeSet<SubId>) -> bool,
    ) -> Option<(bool, bool, BTreeSet<SubId>)> {
        let mut exists = true;
        let mut all = true;
        let mut used = BTreeSet::new();
        for &b in blocks {
            let nil = self.nilpotent_halls(b);
            if nil.is_empty() {
                return None;
            }
            let mut block_used = None;
            for &w in &nil {
                let mut u = BTreeSet::new();
                if cond(&self.ctx, w, &mut u) {
                    block_used = Some(u);
                    break;
                }
            }
            match block_used {
                Some(u) => used.extend(u),
                None => exists = false,
            }
            all &= nil
                .iter()
                .all(|&w| cond(&self.universal, w, &mut BTreeSet::new()));
        }
        Some((exists, all, used))
    }

    fn nilpotent_set_exists(&self) -> bool {
        self.blocks()
            .into_iter()
            .all(|b| !self.nilpotent_halls(b).is_empty())
    }

    pub fn theorem_1_4(&self) -> TheoremOutcome {
        let start = Instant::now();
        let l = &self.lattice;
        let top = l.top();
        let conclusion = self.ctx.sigma_solubility(top).sigma_soluble;
        let sylow = self.sylow_type();
        let halls: Vec<SubId> = self
            .blocks()
            .into_iter()
            .flat_map(|b| self.ctx.hall_for_block(top, b))
            .collect();
        let hyp = sylow
            && halls
                .iter()
                .all(|&h| self.ctx.is_weakly_sigma_permutable(h, top));
        let uni = sylow
            && halls
                .iter()
                .all(|&h| self.universal.is_weakly_sigma_permutable(h, top));
        let mut o = self.outcome(THEOREM_1_4, hyp, conclusion);
        o.universal_hypothesis = Some(uni);
        if !sylow {
            o.reason = Some("not σ-full of Sylow type".into());
        }
        if hyp {
            self.attach(&mut o, &halls.into_iter().collect());
        }
        o.elapsed_ms = start.elapsed().as_millis() as u64;
        o
    }

    pub fn theorem_1_5(&self) -> TheoremOutcome {
        let start = Instant::now();
        let l = &self.lattice;
        let conclusion = l.is_supersoluble(l.top());
        let mut o = self.outcome(THEOREM_1_5, false, conclusion);
        if !self.sylow_type() {
            o.reason = Some("not σ-full of Sylow type".into());
            o.universal_hypothesis = Some(false);
        } else {
            let cond = |ctx: &SigmaContext, w: SubId, used: &mut BTreeSet<SubId>| {
                l.is_cyclic(w) || self.maximals_weak(ctx, w, used)
            };
            match self.nilpotent_hall_condition(&self.blocks(), cond) {
                None => {
                    o.reason = Some("no nilpotent Hall set".into());
                    o.universal_hypothesis = Some(false);
                }
                Some((exists, all, used)) => {
                    o.hypothesis_holds = exists;
                    o.universal_hypothesis = Some(all);
                    if exists {
                        self.attach(&mut o, &used);
                    }
                }
            }
        }
        o.consistent = !o.hypothesis_holds || o.conclusion_holds;
        o.elapsed_ms = start.elapsed().as_millis() as u64;
        o
    }

    /// Hypothesis of the `W_i ∩ E` statements, existential and universal.
    fn hypothesis_for_e(&self, e: SubId) -> (bool, bool, BTreeSet<SubId>, Option<&'static str>) {
        if !self.sylow_type() {
            return (
                false,
                false,
                BTreeSet::new(),
                Some("not σ-full of Sylow type"),
            );
        }
        let l = &self.lattice;
        let cond = |ctx: &SigmaContext, w: SubId, used: &mut BTreeSet<SubId>| {
            self.maximals_weak(ctx, l.meet(w, e), used)
        };
        match self.nilpotent_hall_condition(&self.blocks(), cond) {
            None => (false, false, BTreeSet::new(), Some("no nilpotent Hall set")),
            Some((exists, all, used)) => (exists, all, used, None),
        }
    }

    /// One outcome per normal subgroup `E`.
    pub fn theorem_1_13(&self, normals: &[SubId]) -> Vec<TheoremOutcome> {
        let l = &self.lattice;
        let cl = Classical::new(self.lattice.clone());
        normals
            .iter()
            .map(|&e| {
                let start = Instant::now();
                let conclusion = cl.is_hypercyclically_embedded(e, l.top()).expect("normal");
                let (hyp, uni, used, reason) = self.hypothesis_for_e(e);
                let mut o = self.outcome(THEOREM_1_13, hyp, conclusion);
                o.subject = Some(subject(l, e));
                o.universal_hypothesis = Some(uni);
                o.reason = reason.map(str::to_string);
                if hyp {
                    self.attach(&mut o, &used);
                }
                o.elapsed_ms = start.elapsed().as_millis() as u64;
                o
            })
            .collect()
    }

    /// With 𝔉 the supersoluble groups: for normal `E` with `G/E`
    /// supersoluble, the `W_i ∩ E` hypothesis gives `G` supersoluble.
    pub fn corollary_1_14(&self, normals: &[SubId]) -> Vec<TheoremOutcome> {
        let l = &self.lattice;
        let conclusion = l.is_supersoluble(l.top());
        normals
            .iter()
            .filter(|&&e| quotient_supersoluble(l, e))
            .map(|&e| {
                let start = Instant::now();
                let (hyp, uni, used, reason) = self.hypothesis_for_e(e);
                let mut o = self.outcome(COROLLARY_1_14, hyp, conclusion);
                o.subject = Some(subject(l, e));
                o.universal_hypothesis = Some(uni);
                o.reason = reason.map(str::to_string);
                if hyp {
                    self.attach(&mut o, &used);
                }
                o.elapsed_ms = start.elapsed().as_millis() as u64;
                o
            })
            .collect()
    }

    /// For `E = G` the `W_i ∩ E` statement and the supersolubility statement
    /// must agree: same conclusion, and the former hypothesis implies the
    /// latter.
    pub fn cross_check(&self, t13_top: &TheoremOutcome, t15: &TheoremOutcome) -> TheoremOutcome {
        let agree = t13_top.conclusion_holds == t15.conclusion_holds;
        let implied = !t13_top.hypothesis_holds || t15.hypothesis_holds;
        let mut o = self.outcome(CROSS_CHECK_1_13_1_5, true, agree && implied);
        if !agree {
            o.reason = Some("E = G hypercyclic embedding disagrees with supersolubility".into());
        } else if !implied {
            o.reason =
                Some("E = G hypothesis holds but the supersolubility hypothesis fails".into());
        }
        o
    }

    pub fn proposition_4_1(&self) -> TheoremOutcome {
        let start = Instant::now();
        let l = &self.lattice;
        let top = l.top();
        let conclusion = l.is_soluble(top);
        let mut o = self.outcome(PROPOSITION_4_1, false, conclusion);
        let Some(&p) = primes::prime_divisors(l.order(top)).first() else {
            o.reason = Some("trivial group".into());
            return o;
        };
        if !self.sylow_type() {
            o.reason = Some("not σ-full of Sylow type".into());
            o.universal_hypothesis = Some(false);
        } else if !self.nilpotent_set_exists() {
            o.reason = Some("no nilpotent Hall set".into());
            o.universal_hypothesis = Some(false);
        } else {
            let b1 = self.sigma().block_of(p);
            let cond = |ctx: &SigmaContext, w: SubId, used: &mut BTreeSet<SubId>| {
                self.maximals_weak(ctx, w, used)
            };
            let (exists, all, used) = self
                .nilpotent_hall_condition(&BTreeSet::from([b1]), cond)
                .expect("nilpotent set exists");
            o.hypothesis_holds = exists;
            o.universal_hypothesis = Some(all);
            if exists {
                self.attach(&mut o, &used);
            }
        }
        o.consistent = !o.hypothesis_holds || o.conclusion_holds;
        o.elapsed_ms = start.elapsed().as_millis() as u64;
        o
    }
}

/// `G/E` is supersoluble: the chief factors of `G` above `E` have prime order.
pub fn quotient_supersoluble(l: &SubgroupLattice, e: SubId) -> bool {
    let series = l.chief_series(l.top(), Some(e)).expect("normal");
    series
        .factors
        .iter()
        .filter(|f| l.le(e, f.lower))
        .all(|f| primes::is_prime(f.order))
}
