//! Verification campaigns over the group catalog: implication checks for the
//! main theorems and corollaries, property suites for the auxiliary lemmas,
//! the worked example on the order-1260 group, and versioned reports.

pub mod budget;
pub mod campaign;
pub mod corollaries;
pub mod example;
pub mod lemmas;
pub mod report;
pub mod theorems;

pub use campaign::{run_campaign, CampaignConfig, PartitionPolicy};
pub use example::example_1_2_report;
pub use report::{SuiteResult, TheoremOutcome, VerificationReport, SCHEMA, SCHEMA_VERSION};
