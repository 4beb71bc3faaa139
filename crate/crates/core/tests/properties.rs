use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use sigmaperm::catalog::{self, direct_product};
use sigmaperm::primes;
use sigmaperm::{
    Classical, SigmaContext, SigmaPartition, SubId, SubgroupLattice, DEFAULT_LATTICE_CUTOFF,
};

fn pool() -> &'static [Arc<SubgroupLattice>] {
    static POOL: OnceLock<Vec<Arc<SubgroupLattice>>> = OnceLock::new();
    POOL.get_or_init(|| {
        [
            catalog::symmetric(4),
            catalog::alternating(4),
            catalog::alternating(5),
            catalog::dihedral(6),
            catalog::frobenius21(),
            catalog::elementary_abelian(2, 3),
            direct_product(&catalog::symmetric(3), &catalog::cyclic(3)).group,
            direct_product(&catalog::symmetric(3), &catalog::cyclic(5)).group,
            direct_product(&catalog::alternating(4), &catalog::cyclic(2)).group,
        ]
        .iter()
        .map(|g| Arc::new(SubgroupLattice::new(g, DEFAULT_LATTICE_CUTOFF).unwrap()))
        .collect()
    })
}

/// A lattice with two subgroups, the second normal, chosen by index seeds.
fn pick(g: usize, a: usize, b: usize) -> (&'static SubgroupLattice, SubId, SubId) {
    let l = &pool()[g % pool().len()];
    (l, a % l.len(), b % l.len())
}

fn random_partition(l: &SubgroupLattice, seed: usize) -> SigmaPartition {
    let ps = primes::prime_divisors(l.order(l.top()));
    let all = SigmaPartition::all_partitions(&ps);
    all[seed % all.len()].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn product_formula(g in 0usize..64, a in 0usize..4096, b in 0usize..4096) {
        let (l, a, b) = pick(g, a, b);
        let t = l.table();
        let set = t.product_set(l.sub(a), l.sub(b));
        prop_assert_eq!(set.count_ones(..) as u64, l.product_order(a, b));
    }

    #[test]
    fn permutes_iff_product_is_a_subgroup(g in 0usize..64, a in 0usize..4096, b in 0usize..4096) {
        let (l, a, b) = pick(g, a, b);
        let set = l.table().product_set(l.sub(a), l.sub(b));
        let is_subgroup = l.id_of_elems(&set).is_some();
        prop_assert_eq!(l.permutes(a, b), is_subgroup);
        prop_assert_eq!(l.permutes(a, b), l.permutes(b, a));
        // and against the generator-level test
        let (ga, gb) = (l.to_group(a), l.to_group(b));
        prop_assert_eq!(l.permutes(a, b), ga.permutes(&gb).unwrap());
    }

    #[test]
    fn core_and_closure(g in 0usize..64, h in 0usize..4096, k in 0usize..4096) {
        let (l, h, k) = pick(g, h, k);
        let hk = l.meet(h, k);
        let core = l.core(hk, k);
        prop_assert!(l.le(core, hk));
        prop_assert!(l.is_normal(core, k));
        let closure = l.normal_closure(hk, k);
        prop_assert!(l.le(hk, closure));
        prop_assert!(l.is_normal(closure, k));
        for n in l.normal_subgroups(k) {
            if l.le(n, hk) {
                prop_assert!(l.le(n, core));
            }
            if l.le(hk, n) {
                prop_assert!(l.le(closure, n));
            }
        }
        // generator-level core agrees
        let ambient = l.to_group(k);
        prop_assert_eq!(ambient.core(&l.to_group(hk)).unwrap().order(), l.order(core));
    }

    #[test]
    fn quotient_order_and_correspondence(g in 0usize..64, n in 0usize..4096, h in 0usize..4096) {
        let l = &pool()[g % pool().len()];
        let normals = l.normal_subgroups(l.top());
        let n = normals[n % normals.len()];
        let h = h % l.len();
        let q = l.quotient(n, DEFAULT_LATTICE_CUTOFF).unwrap();
        prop_assert_eq!(q.lattice.order(q.lattice.top()), l.order(l.top()) / l.order(n));
        let image = q.push(l, h);
        prop_assert_eq!(q.preimage(l, image), l.join(h, n));
        prop_assert_eq!(q.lattice.order(image), l.order(l.join(h, n)) / l.order(n));
    }

    #[test]
    fn chief_factor_multiset_is_independent_of_choices(g in 0usize..64, seeds in proptest::collection::vec(0usize..64, 16)) {
        let l = &pool()[g % pool().len()];
        let mut reference = l.chief_series(l.top(), None).unwrap().factor_orders();
        let mut i = 0;
        let series = l.chief_series_by(l.top(), None, |cands| {
            i += 1;
            cands[seeds[i % seeds.len()] % cands.len()]
        }).unwrap();
        let mut orders = series.factor_orders();
        reference.sort_unstable();
        orders.sort_unstable();
        prop_assert_eq!(orders, reference);
        for w in series.terms.windows(2) {
            prop_assert!(l.is_normal(w[0], l.top()));
            prop_assert!(l.le(w[0], w[1]));
        }
    }

    #[test]
    fn sigma_core_monotonicity(g in 0usize..64, h in 0usize..4096, s in 0usize..64) {
        let l = pool()[g % pool().len()].clone();
        let h = h % l.len();
        let sigma = random_partition(&l, s);
        let ctx = SigmaContext::new(l.clone(), sigma);
        let top = l.top();
        let core = ctx.sigma_core(h, top);
        prop_assert!(l.le(core, h));
        prop_assert_eq!(ctx.sigma_core(core, top), core);
        prop_assert!(ctx.is_sigma_permutable(core, top));
        if ctx.is_sigma_permutable(h, top) {
            prop_assert!(ctx.is_weakly_sigma_permutable(h, top));
            prop_assert_eq!(core, h);
        }
    }

    #[test]
    fn positive_answers_carry_verifiable_witnesses(g in 0usize..64, h in 0usize..4096, s in 0usize..64) {
        let l = pool()[g % pool().len()].clone();
        let h = h % l.len();
        let ctx = SigmaContext::new(l.clone(), random_partition(&l, s));
        let (top, sigma) = (l.top(), ctx.sigma().clone());
        let (hg, gg) = (l.to_group(h), l.to_group(top));
        if let Some(w) = ctx.subnormal_witness(h, top) {
            prop_assert!(w.verify(&hg, &gg, &sigma).unwrap());
        }
        if let Some(w) = ctx.permutable_witness(h, top) {
            prop_assert!(w.verify(&hg, &gg, &sigma).unwrap());
        }
        if let Some(w) = ctx.weak_witness(h, top) {
            prop_assert!(w.verify(&hg, &gg, &sigma).unwrap());
        }
        prop_assert!(ctx.core_witness(h, top).verify(&hg, &gg, &sigma).unwrap());
    }

    #[test]
    fn one_block_collapse(g in 0usize..64, h in 0usize..4096) {
        let l = pool()[g % pool().len()].clone();
        let h = h % l.len();
        let ps = primes::prime_divisors(l.order(l.top()));
        let ctx = SigmaContext::new(l.clone(), SigmaPartition::whole(&ps));
        let top = l.top();
        prop_assert!(ctx.is_sigma_subnormal(h, top));
        prop_assert!(ctx.is_sigma_permutable(h, top));
        let sol = ctx.sigma_solubility(top);
        prop_assert!(sol.sigma_soluble && sol.sigma_nilpotent);
    }

    #[test]
    fn s_core_is_s_permutable(g in 0usize..64, h in 0usize..4096) {
        let l = pool()[g % pool().len()].clone();
        let h = h % l.len();
        let cl = Classical::new(l.clone());
        let core = cl.s_core(h, l.top());
        prop_assert!(l.le(core, h));
        prop_assert!(cl.is_s_permutable(core, l.top()));
        let zu = cl.z_u_hypercentre(l.top());
        prop_assert!(cl.is_hypercyclically_embedded(zu, l.top()).unwrap());
    }

    #[test]
    fn pi_part_splits_the_order(n in 1u64..100_000, s in 0usize..64) {
        let ps = primes::prime_divisors(n);
        let all = SigmaPartition::all_partitions(&ps);
        let sigma = &all[s % all.len()];
        let blocks = sigma.classify(n).unwrap().blocks;
        let (first, rest): (BTreeSet<_>, BTreeSet<_>) = blocks.iter().partition(|&&b| b == 0);
        prop_assert_eq!(sigma.pi_part(n, &first) * sigma.pi_part(n, &rest), n);
        prop_assert_eq!(sigma.is_primary(n), blocks.len() <= 1);
    }
}
