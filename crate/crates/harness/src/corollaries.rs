//! The classical corollaries: statements about Sylow subgroups and their
//! maximal subgroups, with s-permutability, c-normality and weak
//! s-permutability in place of the σ-notions.

use std::time::Instant;

use sigmaperm::sigma::Classical;
use sigmaperm::{SubId, SubgroupLattice};

use crate::report::TheoremOutcome;
use crate::theorems::quotient_supersoluble;

const SINGLETONS: &str = "singletons";

fn maximals_of(l: &SubgroupLattice, groups: &[SubId]) -> Vec<SubId> {
    let mut out: Vec<SubId> = groups
        .iter()
        .flat_map(|&p| l.maximal_subgroups(p))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Every corollary except the formation statement (which lives with the
/// σ-checks), evaluated on the whole group and on each normal subgroup.
pub fn check_corollaries(name: &str, cl: &Classical) -> Vec<TheoremOutcome> {
    let l = cl.lattice();
    let g = l.top();
    let soluble = l.is_soluble(g);
    let supersoluble = l.is_supersoluble(g);
    let sylows = l.all_sylow_subgroups(g);
    let noncyclic: Vec<SubId> = sylows
        .iter()
        .copied()
        .filter(|&p| !l.is_cyclic(p))
        .collect();
    let maxes = maximals_of(l, &sylows);
    let maxes_noncyclic = maximals_of(l, &noncyclic);
    let mut out = Vec::new();
    let mut push = |id: &str, hyp: bool, concl: bool, start: Instant| {
        let mut o = TheoremOutcome::new(id, name, SINGLETONS, hyp, concl);
        o.elapsed_ms = start.elapsed().as_millis() as u64;
        out.push(o);
    };

    let t = Instant::now();
    push(
        "corollary-1.6",
        sylows.iter().all(|&p| cl.is_weakly_s_permutable(p, g)),
        soluble,
        t,
    );
    let t = Instant::now();
    push(
        "corollary-1.7",
        sylows.iter().all(|&p| l.is_cyclic(p)),
        supersoluble,
        t,
    );
    let t = Instant::now();
    push(
        "corollary-1.8",
        maxes.iter().all(|&m| cl.is_weakly_s_permutable(m, g)),
        supersoluble,
        t,
    );
    let t = Instant::now();
    push(
        "corollary-1.9",
        maxes_noncyclic
            .iter()
            .all(|&m| cl.is_weakly_s_permutable(m, g)),
        supersoluble,
        t,
    );
    let t = Instant::now();
    push(
        "corollary-1.10",
        maxes.iter().all(|&m| l.is_normal(m, g)),
        supersoluble,
        t,
    );
    let t = Instant::now();
    push(
        "corollary-1.11",
        maxes.iter().all(|&m| cl.is_s_permutable(m, g)),
        supersoluble,
        t,
    );
    let t = Instant::now();
    push(
        "corollary-1.12",
        maxes.iter().all(|&m| cl.is_c_normal(m, g)),
        supersoluble,
        t,
    );

    for e in l.normal_subgroups(g) {
        if !quotient_supersoluble(l, e) {
            continue;
        }
        let t = Instant::now();
        let maxes_e = maximals_of(l, &l.all_sylow_subgroups(e));
        let s_perm = maxes_e.iter().all(|&m| cl.is_s_permutable(m, g));
        let c_norm = maxes_e.iter().all(|&m| cl.is_c_normal(m, g));
        let subject = Some(format!("#{e} (order {})", l.order(e)));
        for (id, hyp) in [
            ("corollary-1.15", s_perm),
            ("corollary-1.16", s_perm),
            ("corollary-1.17", c_norm),
        ] {
            let mut o = TheoremOutcome::new(id, name, SINGLETONS, hyp, supersoluble);
            o.subject = subject.clone();
            o.elapsed_ms = t.elapsed().as_millis() as u64;
            out.push(o);
        }
    }
    out
}
