//! Monte Carlo toolkit for percolation of Wiener sausages and Boolean models.
//!
//! Geometry and sampling are generic over [`Real`] (`f32` or `f64`); the
//! certificate arithmetic is generic over [`certificate::CertScalar`]
//! (`f64` or exact fractions). Aliases below fix the common choices.

pub mod certificate;
pub mod error;
pub mod estimators;
pub mod geometry;
pub mod models;
pub mod real;
pub mod stochastic;

pub use error::{Error, Result};
pub use real::Real;

pub type Polyline64 = stochastic::Polyline<f64>;
pub type Polyline32 = stochastic::Polyline<f32>;
pub type PointSet64 = stochastic::PointSet<f64>;
pub type PointSet32 = stochastic::PointSet<f32>;
pub type CapsuleChain64 = geometry::CapsuleChain<f64>;
pub type CapsuleChain32 = geometry::CapsuleChain<f32>;
pub type Aabb64 = geometry::Aabb<f64>;
pub type ClusterLabeling64 = geometry::ClusterLabeling<f64>;
pub type OccupiedSetSample64 = models::OccupiedSetSample<f64>;
