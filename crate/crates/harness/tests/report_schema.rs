//! Reports validate against the shipped schema and round-trip through JSON.

use sigmaperm::catalog::corpus;
use sigmaperm_harness::{
    example_1_2_report, run_campaign, CampaignConfig, PartitionPolicy, VerificationReport, SCHEMA,
};

fn validate(r: &VerificationReport) {
    let schema: serde_json::Value = serde_json::from_str(SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    let errors: Vec<String> = validator.iter_errors(&doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
    let back: VerificationReport = serde_json::from_value(doc).unwrap();
    assert_eq!(&back, r);
}

#[test]
fn campaign_report_validates() {
    let cfg = CampaignConfig {
        max_order: 24,
        ..Default::default()
    };
    let r = run_campaign(&corpus(24).unwrap(), &PartitionPolicy::All, &cfg);
    assert!(!r.outcomes.is_empty());
    validate(&r);
}

#[test]
fn example_report_validates() {
    let r = example_1_2_report().unwrap();
    assert!(r.passed());
    validate(&r);
}

#[test]
fn schema_rejects_a_wrong_version() {
    let schema: serde_json::Value = serde_json::from_str(SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let mut doc: serde_json::Value =
        serde_json::from_str(&example_1_2_report().unwrap().to_json()).unwrap();
    doc["versions"]["schema"] = "sigmaperm-report/0".into();
    assert!(!validator.is_valid(&doc));
}
