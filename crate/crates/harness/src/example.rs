//! The worked example on `G = (C_7 ⋊ C_3) × A_5` with σ = {{2,3,5},{7}}.

use std::sync::Arc;
use std::time::Instant;

use sigmaperm::catalog::{example_1_2, Example12};
use sigmaperm::sigma::{Classical, PermutablePart, SigmaContext, SigmaPartition, SigmaWitness};
use sigmaperm::{FiniteGroup, Result, SubId, SubgroupLattice, DEFAULT_LATTICE_CUTOFF};

use crate::report::{ConfigEcho, TheoremOutcome, VerificationReport};
use crate::theorems::summarize;

pub const GROUP_NAME: &str = "g1260";
pub const SIGMA: &str = "2,3,5|7";

/// One claim of the example: its label, what it says, and the verdict.
pub struct Claim {
    pub label: char,
    pub statement: &'static str,
    pub holds: bool,
    pub detail: String,
    /// Certificates with the verdict of their independent re-check.
    pub witnesses: Vec<(SigmaWitness, bool)>,
}

struct Setup {
    ex: Example12,
    ctx: SigmaContext,
    classical: Classical,
}

impl Setup {
    fn id(&self, h: &FiniteGroup) -> SubId {
        self.ctx
            .lattice()
            .find(h)
            .expect("cast member is a subgroup of G")
    }

    fn order(&self, id: SubId) -> u64 {
        self.ctx.lattice().order(id)
    }
}

fn claim(label: char, statement: &'static str, holds: bool, detail: String) -> Claim {
    Claim {
        label,
        statement,
        holds,
        detail,
        witnesses: Vec::new(),
    }
}

fn claim_a(s: &Setup) -> Claim {
    let g = s.ctx.top();
    let b = s.id(&s.ex.b);
    let sigma = s.ctx.sigma();
    let t = s.ctx.weak_supplement(b, g);
    let computed = s.ctx.weak_witness(b, g);
    let computed_ok = computed
        .as_ref()
        .is_some_and(|w| w.verify(&s.ex.b, &s.ex.g, sigma).unwrap_or(false));
    // T1 supplements B, is σ-subnormal, and meets B trivially
    let explicit = SigmaWitness::SupplementT {
        t: s.ex.t1.clone(),
        chain: chain_groups(&s.ctx, s.id(&s.ex.t1)),
        core_parts: vec![PermutablePart {
            subgroup: s.ex.b.clone(),
            hall_set: vec![s.ex.a5c3.clone(), s.ex.c7.clone()],
        }],
    };
    let explicit_ok = explicit.verify(&s.ex.b, &s.ex.g, sigma).unwrap_or(false);
    let t_order = t.map(|t| s.order(t));
    let mut c = claim(
        'a',
        "B is weakly σ-permutable in G, supplemented by T1 = F21 × A",
        s.ctx.is_weakly_sigma_permutable(b, g)
            && computed_ok
            && explicit_ok
            && t_order == Some(105),
        format!(
            "least supplement order {}; computed witness {computed_ok}; T1 witness {explicit_ok}",
            t_order.map_or("none".into(), |o| o.to_string())
        ),
    );
    c.witnesses = computed
        .map(|w| (w, computed_ok))
        .into_iter()
        .chain([(explicit, explicit_ok)])
        .collect();
    c
}

fn claim_b(s: &Setup) -> Claim {
    let g = s.ctx.top();
    let b = s.id(&s.ex.b);
    let supplement = s.classical.weak_s_supplement(b, g);
    claim(
        'b',
        "B is not weakly s-permutable in G",
        supplement.is_none(),
        match supplement {
            None => "no subnormal T with BT = G and B ∩ T ≤ s-core".into(),
            Some(t) => format!("found T of order {}", s.order(t)),
        },
    )
}

fn claim_c(s: &Setup) -> Claim {
    let g = s.ctx.top();
    let b = s.id(&s.ex.b);
    let s_perm = s.classical.is_s_permutable(b, g);
    let c_norm = s.classical.is_c_normal(b, g);
    claim(
        'c',
        "B is neither s-permutable nor c-normal in G",
        !s_perm && !c_norm,
        format!("s-permutable {s_perm}; c-normal {c_norm}"),
    )
}

fn claim_d(s: &Setup) -> Claim {
    let g = s.ctx.top();
    let h = s.id(&s.ex.h);
    let sigma = s.ctx.sigma();
    let t2 = SigmaWitness::SupplementT {
        t: s.ex.t2.clone(),
        chain: vec![s.ex.t2.clone(), s.ex.g.clone()],
        core_parts: vec![PermutablePart {
            subgroup: s.ex.b.clone(),
            hall_set: vec![s.ex.a5c3.clone(), s.ex.c7.clone()],
        }],
    };
    let t2_ok = t2.verify(&s.ex.h, &s.ex.g, sigma).unwrap_or(false);
    let wsp = s.ctx.is_weakly_sigma_permutable(h, g);
    let mut c = claim(
        'd',
        "H = BC3 is weakly σ-permutable in G with T2 = C7A5",
        wsp && t2_ok,
        format!("weakly σ-permutable {wsp}; T2 witness {t2_ok}"),
    );
    c.witnesses.push((t2, t2_ok));
    c
}

fn claim_e(s: &Setup) -> Claim {
    let g = s.ctx.top();
    let (b, h) = (s.id(&s.ex.b), s.id(&s.ex.h));
    let core = s.ctx.sigma_core(h, g);
    let perm = s.ctx.is_sigma_permutable(h, g);
    let w = s.ctx.core_witness(h, g);
    let ok = w.verify(&s.ex.h, &s.ex.g, s.ctx.sigma()).unwrap_or(false);
    let mut c = claim(
        'e',
        "the σ-core of H is B, so H is not σ-permutable",
        core == b && !perm && ok,
        format!(
            "σ-core order {}; σ-permutable {perm}; core witness {ok}",
            s.order(core)
        ),
    );
    c.witnesses.push((w, ok));
    c
}

fn claim_f(s: &Setup) -> Claim {
    let g = s.ctx.top();
    let (a5c3, c7) = (s.id(&s.ex.a5c3), s.id(&s.ex.c7));
    let found = s
        .ctx
        .complete_hall_sigma_sets(g)
        .iter()
        .any(|set| set.members.values().copied().collect::<Vec<_>>() == [a5c3, c7]);
    claim(
        'f',
        "{A5C3, C7} is a complete Hall σ-set of G",
        found && s.order(a5c3) == 180,
        format!("listed {found}; |A5C3| = {}", s.order(a5c3)),
    )
}

fn claim_g(s: &Setup) -> Claim {
    let g = s.ctx.top();
    let t1 = s.id(&s.ex.t1);
    let w = s.ctx.subnormal_witness(t1, g);
    let ok = w
        .as_ref()
        .is_some_and(|w| w.verify(&s.ex.t1, &s.ex.g, s.ctx.sigma()).unwrap_or(false));
    let mut c = claim(
        'g',
        "T1 is σ-subnormal in G",
        s.ctx.is_sigma_subnormal(t1, g) && ok,
        format!("chain witness {ok}"),
    );
    c.witnesses.extend(w.map(|w| (w, ok)));
    c
}

fn chain_groups(ctx: &SigmaContext, h: SubId) -> Vec<FiniteGroup> {
    let l = ctx.lattice();
    ctx.subnormal_chain(h, l.top())
        .unwrap_or_default()
        .into_iter()
        .map(|k| l.to_group(k))
        .collect()
}

/// Evaluates the claims in order, stopping at the first one that fails.
pub fn example_1_2_claims() -> Result<Vec<Claim>> {
    let ex = example_1_2();
    let lattice = Arc::new(SubgroupLattice::new(&ex.g, DEFAULT_LATTICE_CUTOFF)?);
    let sigma = SigmaPartition::parse(SIGMA, ex.g.order())?;
    let ctx = SigmaContext::new(lattice.clone(), sigma);
    let setup = Setup {
        ex,
        ctx,
        classical: Classical::new(lattice),
    };
    let checks: [fn(&Setup) -> Claim; 7] = [
        claim_a, claim_b, claim_c, claim_d, claim_e, claim_f, claim_g,
    ];
    let mut out = Vec::new();
    for check in checks {
        let c = check(&setup);
        let failed = !c.holds;
        out.push(c);
        if failed {
            break;
        }
    }
    Ok(out)
}

/// Claims as outcomes: hypothesis always holds, the conclusion is the claim.
pub fn claim_outcomes(claims: &[Claim], elapsed_ms: u64) -> Vec<TheoremOutcome> {
    claims
        .iter()
        .map(|c| {
            let mut o = TheoremOutcome::new(
                &format!("example-1.2({})", c.label),
                GROUP_NAME,
                SIGMA,
                true,
                c.holds,
            );
            o.subject = Some(c.statement.to_string());
            o.reason = Some(c.detail.clone());
            o.witnesses = c
                .witnesses
                .iter()
                .map(|(w, ok)| summarize(w, Some(*ok)))
                .collect();
            o.elapsed_ms = elapsed_ms;
            o
        })
        .collect()
}

pub fn example_1_2_report() -> Result<VerificationReport> {
    let start = Instant::now();
    let claims = example_1_2_claims()?;
    let elapsed = start.elapsed().as_millis() as u64;
    let mut report = VerificationReport::new(ConfigEcho {
        max_order: 1260,
        policy: format!("listed({SIGMA})"),
        groups: 1,
        seed: 0,
        samples_per_suite: 0,
        budget_ms: 0,
        verify_witnesses: true,
    });
    report.outcomes = claim_outcomes(&claims, 0);
    let suite = report.suite_mut("example-1.2");
    for c in &claims {
        suite.record(c.holds, || {
            format!("({}) {}: {}", c.label, c.statement, c.detail)
        });
    }
    report.totals.jobs = 1;
    report.elapsed_ms = elapsed;
    report.finish();
    Ok(report)
}
