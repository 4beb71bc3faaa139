use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use super::*;
use crate::catalog::{self, example_1_2, Example12};
use crate::group::FiniteGroup;
use crate::lattice::{SubgroupLattice, DEFAULT_LATTICE_CUTOFF};

fn lattice(g: &FiniteGroup) -> Arc<SubgroupLattice> {
    Arc::new(SubgroupLattice::new(g, DEFAULT_LATTICE_CUTOFF).unwrap())
}

fn context(g: &FiniteGroup, sigma: &str) -> SigmaContext {
    let l = lattice(g);
    let s = SigmaPartition::parse(sigma, l.order(l.top())).unwrap();
    SigmaContext::new(l, s)
}

struct Fixture {
    ex: Example12,
    ctx: SigmaContext,
    classical: Classical,
}

fn example() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| {
        let ex = example_1_2();
        let ctx = context(&ex.g, "2,3,5");
        let classical = Classical::new(ctx.shared_lattice());
        Fixture { ex, ctx, classical }
    })
}

fn id(f: &Fixture, h: &FiniteGroup) -> SubId {
    f.ctx.lattice().find(h).unwrap()
}

#[test]
fn example_hall_sets() {
    let f = example();
    let g = f.ctx.top();
    assert_eq!(f.ctx.sigma().to_string(), "2,3,5|7");
    let sigma1 = f.ctx.hall_for_block(g, 0);
    assert!(!sigma1.is_empty());
    assert!(sigma1.iter().all(|&h| f.ctx.lattice().order(h) == 180));
    assert!(sigma1.contains(&id(f, &f.ex.a5c3)));
    assert_eq!(f.ctx.hall_for_block(g, 1), vec![id(f, &f.ex.c7)]);
    let sets = f.ctx.complete_hall_sigma_sets(g);
    assert_eq!(sets.len(), sigma1.len());
    assert!(f.ctx.is_sigma_full_of_sylow_type(g));
}

#[test]
fn example_permutability_and_core() {
    let f = example();
    let g = f.ctx.top();
    let (b, h) = (id(f, &f.ex.b), id(f, &f.ex.h));
    assert!(f.ctx.is_sigma_permutable(b, g));
    assert!(!f.ctx.is_sigma_permutable(h, g));
    assert_eq!(f.ctx.sigma_core(h, g), b);
    assert!(f.ctx.is_sigma_subnormal(id(f, &f.ex.t1), g));
}

#[test]
fn example_weak_permutability() {
    let f = example();
    let g = f.ctx.top();
    let (b, h) = (id(f, &f.ex.b), id(f, &f.ex.h));
    let t = f.ctx.weak_supplement(b, g).unwrap();
    assert_eq!(f.ctx.lattice().order(t), 105);
    assert!(f.ctx.is_weakly_sigma_permutable(h, g));
    let w = SigmaWitness::SupplementT {
        t: f.ex.t2.clone(),
        chain: vec![f.ex.t2.clone(), f.ex.g.clone()],
        core_parts: vec![PermutablePart {
            subgroup: f.ex.b.clone(),
            hall_set: vec![f.ex.a5c3.clone(), f.ex.c7.clone()],
        }],
    };
    assert!(w.verify(&f.ex.h, &f.ex.g, f.ctx.sigma()).unwrap());
}

#[test]
fn example_classical_predicates_fail() {
    let f = example();
    let g = f.ctx.top();
    let b = id(f, &f.ex.b);
    assert!(!f.classical.is_s_permutable(b, g));
    assert!(!f.classical.is_weakly_s_permutable(b, g));
    assert!(!f.classical.is_c_normal(b, g));
}

#[test]
fn example_witnesses_verify() {
    let f = example();
    let g = f.ctx.top();
    let s = f.ctx.sigma();
    for h in [&f.ex.b, &f.ex.h, &f.ex.t1] {
        let i = id(f, h);
        if let Some(w) = f.ctx.weak_witness(i, g) {
            assert_eq!(w.kind(), WitnessKind::SupplementT);
            assert!(w.verify(h, &f.ex.g, s).unwrap());
        }
        assert!(f.ctx.core_witness(i, g).verify(h, &f.ex.g, s).unwrap());
    }
    let w = f.ctx.permutable_witness(id(f, &f.ex.b), g).unwrap();
    assert!(w.verify(&f.ex.b, &f.ex.g, s).unwrap());
    // the same Hall set does not certify H
    assert!(!w.verify(&f.ex.h, &f.ex.g, s).unwrap());
    let w = f.ctx.subnormal_witness(id(f, &f.ex.t1), g).unwrap();
    assert!(w.verify(&f.ex.t1, &f.ex.g, s).unwrap());
}

#[test]
fn example_solubility_and_operators() {
    let f = example();
    let g = f.ctx.top();
    let l = f.ctx.lattice();
    let sol = f.ctx.sigma_solubility(g);
    assert!(sol.sigma_soluble);
    let mut orders = l.chief_series(g, None).unwrap().factor_orders();
    orders.sort_unstable();
    assert_eq!(orders, vec![3, 7, 60]);
    let ops = f.ctx.sigma_operators(g, &BTreeSet::from([0]));
    assert!(l.le(id(f, &f.ex.c7), ops.o_upper));
    assert!(f.ctx.sigma().is_primary(l.order(g) / l.order(ops.o_upper)));
    assert!(l.le(ops.o_lower, id(f, &f.ex.t2)));
    let all = f.ctx.sigma_operators(g, &BTreeSet::from([0, 1]));
    assert_eq!(all.o_lower, g);
    assert_eq!(all.o_upper, l.trivial());
}

#[test]
fn a5_halls_and_solubility() {
    let a5 = catalog::alternating(5);
    let ctx = context(&a5, "2,3|5");
    let halls = ctx.hall_for_block(ctx.top(), 0);
    assert_eq!(halls.len(), 5);
    assert!(halls.iter().all(|&h| ctx.lattice().order(h) == 12));
    assert!(!ctx.is_sigma_full_of_sylow_type(ctx.top()));
    let single = context(&a5, "singletons");
    assert!(!single.sigma_solubility(single.top()).sigma_soluble);
    assert!(single.is_sigma_full_of_sylow_type(single.top()));
    let whole = context(&a5, "whole");
    let sol = whole.sigma_solubility(whole.top());
    assert!(sol.sigma_soluble && sol.sigma_nilpotent);
    assert_eq!(whole.complete_hall_sigma_sets(whole.top()).len(), 1);
}

#[test]
fn s4_singletons_match_classical_notions() {
    let s4 = catalog::symmetric(4);
    let ctx = context(&s4, "singletons");
    let cl = Classical::new(ctx.shared_lattice());
    let l = ctx.lattice();
    let g = l.top();
    assert_eq!(ctx.complete_hall_sigma_sets(g).len(), 12);
    let mut s_perm = Vec::new();
    for h in l.ids() {
        assert_eq!(ctx.is_sigma_subnormal(h, g), l.is_subnormal(h, g));
        assert_eq!(ctx.is_sigma_permutable(h, g), cl.is_s_permutable(h, g));
        assert_eq!(ctx.sigma_core(h, g), cl.s_core(h, g));
        assert_eq!(
            ctx.is_weakly_sigma_permutable(h, g),
            cl.is_weakly_s_permutable(h, g)
        );
        if cl.is_s_permutable(h, g) {
            s_perm.push(l.order(h));
        }
    }
    assert_eq!(s_perm, vec![1, 4, 12, 24]);
    let c2 = l
        .ids()
        .find(|&h| l.order(h) == 2 && !l.is_subnormal(h, g))
        .unwrap();
    assert_eq!(ctx.sigma_core(c2, g), l.trivial());
}

#[test]
fn hypercentre() {
    let s4 = Classical::new(lattice(&catalog::symmetric(4)));
    let l = s4.lattice();
    assert_eq!(s4.z_u_hypercentre(l.top()), l.trivial());
    assert!(s4
        .is_hypercyclically_embedded(l.trivial(), l.top())
        .unwrap());
    let not_normal = l.ids().find(|&h| !l.is_normal(h, l.top())).unwrap();
    assert!(s4.is_hypercyclically_embedded(not_normal, l.top()).is_err());
    let s3 = Classical::new(lattice(&catalog::symmetric(3)));
    assert_eq!(s3.z_u_hypercentre(s3.lattice().top()), s3.lattice().top());
}

#[test]
fn normal_subgroups_are_permutable_in_full_groups() {
    let s4 = catalog::symmetric(4);
    let ctx = context(&s4, "2|3");
    let l = ctx.lattice();
    let cl = Classical::new(ctx.shared_lattice());
    for n in l.normal_subgroups(l.top()) {
        assert!(ctx.is_sigma_permutable(n, l.top()));
        assert!(cl.is_s_permutable(n, l.top()));
        assert!(cl.is_c_normal(n, l.top()));
        assert!(cl.is_weakly_s_permutable(n, l.top()));
    }
}

#[test]
fn degenerate_subgroups() {
    let a5 = catalog::alternating(5);
    let ctx = context(&a5, "2,3|5");
    let (one, g) = (ctx.lattice().trivial(), ctx.top());
    for h in [one, g] {
        assert!(ctx.is_sigma_permutable(h, g));
        assert!(ctx.is_weakly_sigma_permutable(h, g));
        assert!(ctx.is_sigma_subnormal(h, g));
    }
    assert_eq!(ctx.weak_supplement(g, g), Some(one));
}
