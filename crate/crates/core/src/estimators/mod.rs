//! Monte Carlo estimators with Wilson intervals.
//!
//! Replica `k` of an estimate always consumes `stream/replica[k]`, so results
//! do not depend on how replicas are scheduled across threads.

mod annulus;
mod ci;
mod crossing;
mod edges;
mod scale;
mod threshold;
mod trial;
mod uniqueness;

pub use annulus::{annulus_intersection_probability, bridge_stay_probability, Annulus};
pub use ci::{two_proportion_test, EstimateCI, DEFAULT_LEVEL};
pub use crossing::{crosses, crossing_probability, CrossingTrial};
pub use edges::{
    edge_open_probability, intersection_dimension_flag, path_intersection_probability, site_occupancy, EdgeParams,
};
pub use scale::{compare_crossing, scale_invariance_check, scaled_config, ScaleReport, SCALE_TEST_ALPHA};
pub use threshold::*;
pub use trial::{count_successes, estimate, extend_estimate, BernoulliTrial};
pub use uniqueness::{multiple_spanning_frequency, unbounded_cluster_count};
