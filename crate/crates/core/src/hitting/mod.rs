//! Hitting sets for the family of maximum independent sets.

mod certificate;
mod construct;
mod schedule;
mod verify;

pub use certificate::{HittingCertificate, Mode};
pub use construct::{
    averaging_bound_holds, bin_and_select, build_common_neighborhood, choose_exchange, closed_neighborhood_hitting,
    construct_bet_hitting_set, construct_inside, construct_with, sample_anchors, sample_anchors_with, size_bound_check, ConstructOptions,
};
pub use schedule::{budget, exchange_size, paper_schedule, scaled_schedule, Bin, ParamSchedule};
pub(crate) use schedule::binomial_f64;
pub use verify::{
    min_hitting_set, min_hitting_set_with_cap, min_transversal, sample_hitting_set, sample_subset, verify_by_deletion,
    verify_hitting_set, verify_hitting_set_with_cap, SampleReport,
};
