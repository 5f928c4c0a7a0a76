//! Capsule chains, broad phase, clustering and crossings.

pub mod aabb;
pub mod capsule;
pub mod clip;
pub mod cluster;
pub mod grid;
pub mod segment;
pub mod union_find;

pub use aabb::Aabb;
pub use capsule::{chains_touch, CapsuleChain};
pub use clip::{capsules_meet_in_box, crossing, spanning_components, ClipProblem};
pub use cluster::{cluster, Cluster, ClusterLabeling};
pub use grid::{build_index, SpatialIndex};
pub use segment::{segment_box_distance, segment_distance};
pub use union_find::UnionFind;

/// Labels the chains using the grid broad phase (`build_index` + `cluster`).
pub fn label<F: crate::real::Real>(chains: &[CapsuleChain<F>], tol: F) -> ClusterLabeling<F> {
    cluster(chains, &build_index(chains, tol), tol)
}
