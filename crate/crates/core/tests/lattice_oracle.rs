//! The lattice engine against two independent enumerations that only use
//! permutation arithmetic and generator-level joins.

use std::collections::BTreeSet;

use sigmaperm::catalog::{self, direct_product};
use sigmaperm::{FiniteGroup, Permutation, SubgroupLattice, DEFAULT_LATTICE_CUTOFF};

type ElementSet = Vec<Permutation>;

fn lattice_sets(g: &FiniteGroup) -> BTreeSet<ElementSet> {
    let l = SubgroupLattice::new(g, DEFAULT_LATTICE_CUTOFF).unwrap();
    l.ids()
        .map(|i| {
            let mut v: Vec<Permutation> = l
                .sub(i)
                .members()
                .map(|x| l.table().element(x).clone())
                .collect();
            v.sort();
            v
        })
        .collect()
}

/// Every subset containing the identity and closed under products.
fn subsets_oracle(g: &FiniteGroup) -> BTreeSet<ElementSet> {
    let els = g.elements().unwrap();
    let id = g.identity();
    let rest: Vec<&Permutation> = els.iter().filter(|p| **p != id).collect();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << rest.len()) {
        let mut set: Vec<Permutation> = vec![id.clone()];
        set.extend(
            (0..rest.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| rest[i].clone()),
        );
        let closed = set
            .iter()
            .all(|a| set.iter().all(|b| set.contains(&(a * b))));
        if closed {
            set.sort();
            out.insert(set);
        }
    }
    out
}

/// Closure of the cyclic subgroups under pairwise joins.
fn join_oracle(g: &FiniteGroup) -> BTreeSet<ElementSet> {
    let key = |h: &FiniteGroup| h.elements().unwrap().as_ref().clone();
    let mut found: Vec<FiniteGroup> = Vec::new();
    let mut seen = BTreeSet::new();
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
    seen
}

#[test]
fn small_groups_match_subset_enumeration() {
    let groups = [
        catalog::cyclic(6),
        catalog::cyclic(8),
        catalog::dihedral(4),
        catalog::dihedral(5),
        catalog::dihedral(6),
        catalog::symmetric(3),
        catalog::elementary_abelian(2, 3),
        catalog::alternating(4),
        direct_product(&catalog::cyclic(2), &catalog::cyclic(6)).group,
    ];
    for g in &groups {
        assert!(g.order() <= 12);
        assert_eq!(lattice_sets(g), subsets_oracle(g), "order {}", g.order());
    }
}

#[test]
fn medium_groups_match_join_closure() {
    let groups = [
        catalog::symmetric(4),
        catalog::alternating(5),
        catalog::frobenius21(),
        catalog::elementary_abelian(2, 4),
        catalog::dihedral(12),
        direct_product(&catalog::symmetric(3), &catalog::symmetric(3)).group,
        direct_product(&catalog::alternating(4), &catalog::cyclic(3)).group,
    ];
    for g in &groups {
        assert!(g.order() <= 60);
        assert_eq!(lattice_sets(g), join_oracle(g), "order {}", g.order());
    }
}

#[test]
fn known_subgroup_counts() {
    let count = |g: &FiniteGroup| {
        SubgroupLattice::new(g, DEFAULT_LATTICE_CUTOFF)
            .unwrap()
            .len()
    };
    assert_eq!(count(&catalog::symmetric(4)), 30);
    assert_eq!(count(&catalog::frobenius21()), 10);
    assert_eq!(count(&catalog::alternating(5)), 59);
    assert_eq!(count(&catalog::symmetric(5)), 156);
    assert_eq!(count(&catalog::elementary_abelian(2, 4)), 67);
}
