//! Individual checks on small groups where the answer is forced by hand.

use std::sync::Arc;

use sigmaperm::catalog::{self, CatalogEntry};
use sigmaperm::sigma::{Classical, SigmaContext, SigmaPartition};
use sigmaperm::{FiniteGroup, SubgroupLattice, DEFAULT_LATTICE_CUTOFF};
use sigmaperm_harness::corollaries::check_corollaries;
use sigmaperm_harness::theorems::Checker;
use sigmaperm_harness::{run_campaign, CampaignConfig, PartitionPolicy, TheoremOutcome};

fn lattice(g: &FiniteGroup) -> Arc<SubgroupLattice> {
    Arc::new(SubgroupLattice::new(g, DEFAULT_LATTICE_CUTOFF).unwrap())
}

fn checker(g: &FiniteGroup, sigma: &str) -> Checker {
    let l = lattice(g);
    let s = SigmaPartition::parse(sigma, g.order()).unwrap();
    Checker::new("g", Arc::new(SigmaContext::new(l, s)), true)
}

fn corollary<'a>(out: &'a [TheoremOutcome], id: &str) -> &'a TheoremOutcome {
    out.iter().find(|o| o.theorem_id == id).unwrap()
}

#[test]
fn a5_two_blocks_fails_the_hall_hypothesis() {
    let o = checker(&catalog::alternating(5), "2,3|5").theorem_1_4();
    assert!(!o.conclusion_holds);
    assert!(!o.hypothesis_holds);
    assert!(o.consistent);
}

#[test]
fn s4_is_sigma_soluble_for_every_partition() {
    for sigma in ["singletons", "2,3", "whole"] {
        assert!(
            checker(&catalog::symmetric(4), sigma)
                .theorem_1_4()
                .conclusion_holds
        );
    }
}

#[test]
fn primary_group_satisfies_both_sides() {
    let o = checker(&catalog::dihedral(8), "2").theorem_1_4();
    assert!(o.hypothesis_holds && o.conclusion_holds);
}

#[test]
fn s4_singletons_fails_the_maximal_subgroup_hypothesis() {
    let o = checker(&catalog::symmetric(4), "2|3").theorem_1_5();
    assert!(!o.conclusion_holds);
    assert!(!o.hypothesis_holds);
}

#[test]
fn s3_cyclic_sylows_make_the_hypothesis_vacuous() {
    let o = checker(&catalog::symmetric(3), "2|3").theorem_1_5();
    assert!(o.hypothesis_holds && o.conclusion_holds);
}

#[test]
fn hypercyclic_embedding_of_v4_in_s4() {
    let c = checker(&catalog::symmetric(4), "singletons");
    let l = c.lattice();
    let normals = l.normal_subgroups(l.top());
    let out = c.theorem_1_13(&normals);
    let v4 = normals.iter().position(|&e| l.order(e) == 4).unwrap();
    assert!(!out[v4].conclusion_holds);
    assert!(!out[v4].hypothesis_holds);
    // E = 1 holds on both sides
    assert!(out[0].hypothesis_holds && out[0].conclusion_holds);
}

#[test]
fn smallest_prime_block_on_a5() {
    let whole = checker(&catalog::alternating(5), "whole").proposition_4_1();
    assert!(!whole.hypothesis_holds);
    assert_eq!(whole.reason.as_deref(), Some("no nilpotent Hall set"));
    let singles = checker(&catalog::alternating(5), "singletons").proposition_4_1();
    assert!(!singles.conclusion_holds);
    assert!(!singles.hypothesis_holds);
}

#[test]
fn classical_corollaries_on_s3_and_a5() {
    let s3 = check_corollaries("S3", &Classical::new(lattice(&catalog::symmetric(3))));
    let c7 = corollary(&s3, "corollary-1.7");
    assert!(c7.hypothesis_holds && c7.conclusion_holds);
    let a5 = check_corollaries("A5", &Classical::new(lattice(&catalog::alternating(5))));
    assert!(!corollary(&a5, "corollary-1.6").hypothesis_holds);
    let ab = check_corollaries(
        "C2xC6",
        &Classical::new(lattice(
            &catalog::direct_product(&catalog::cyclic(2), &catalog::cyclic(6)).group,
        )),
    );
    let c10 = corollary(&ab, "corollary-1.10");
    assert!(c10.hypothesis_holds && c10.consistent);
}

#[test]
fn empty_corpus_gives_an_empty_report() {
    let r = run_campaign(&[], &PartitionPolicy::All, &CampaignConfig::default());
    assert!(r.outcomes.is_empty());
    assert!(r.suite_results.is_empty());
    assert_eq!(r.totals.jobs, 0);
    assert!(r.passed());
}

#[test]
fn listed_partition_on_the_example_group_carries_the_claims() {
    let ex = catalog::example_1_2();
    let entry = CatalogEntry::new("g1260", ex.g, 1260, &["example-1.2"]).unwrap();
    let cfg = CampaignConfig {
        max_order: 1260,
        ..Default::default()
    };
    let r = run_campaign(&[entry], &PartitionPolicy::Listed("2,3,5|7".into()), &cfg);
    let claims: Vec<&TheoremOutcome> = r
        .outcomes
        .iter()
        .filter(|o| o.theorem_id.starts_with("example-1.2"))
        .collect();
    assert_eq!(claims.len(), 7);
    assert!(claims.iter().all(|o| o.consistent));
    assert!(r.passed(), "{}", r.to_text());
}
