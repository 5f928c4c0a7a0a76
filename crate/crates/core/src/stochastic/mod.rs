//! Seeded sampling and closed-form probabilities.

pub mod bounds;
pub mod brownian;
pub mod poisson;
pub mod quadrature;
pub mod radius;
pub mod rng;
pub mod special;

pub use bounds::{default_k_max, subcritical_safe_intensity, radius_moment_bound, slab_intensity_sum, slab_mass};
pub use brownian::{grid_len, sample_brownian_bridge, sample_brownian_path, sup_radius, Polyline};
pub use poisson::{poisson_quantile, sample_poisson_points, PointSet};
pub use radius::RadiusDistribution;
pub use rng::{derive_stream, RngStream, RNG_ALGORITHM};
pub use special::{hitting_probability_halfline, std_normal_cdf, std_normal_quantile, std_normal_sf};
