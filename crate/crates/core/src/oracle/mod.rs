//! Constructive lower bounds and the cross-verification harness.

pub mod corpus;
mod search;
mod verify;

pub use search::{count_heavy_points, gap, gap_table, lower_bound_search, partitions, ProfileAssignment};
pub use verify::{expect_closed_form_failure, verify_all, CheckResult, Report, SweepSpec, CLOSED_FORM_OUTSIDE_REGION};
