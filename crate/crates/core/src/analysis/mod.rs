//! Intersection probabilities, the analytic estimates on the residual edge count `e`,
//! Monte Carlo estimation of `e`, and the experiment harness.

mod bounds;
mod experiment;
mod monte_carlo;
mod probability;

pub use bounds::{analytic_e_bound, EBound};
pub use experiment::{
    auto_k, run_experiment, AutoOr, AutoWord, BinsSpec, BinsWord, Caps, CellError, ExperimentConfig, ExperimentRecord,
    ExperimentReport, FamilySpec, InlineSchedule, ScheduleSpec, CSV_HEADER, CSV_SCHEMA_VERSION,
};
pub use monte_carlo::{exact_expected_e, expectation_audit, monte_carlo_e, AuditOutcome, EStatistics};
pub use probability::{hypergeometric_pmf, ln_choose, logsumexp, prob_low_intersection};
