//! Occupied-set builders: sausages, Boolean balls, coarse-grained bonds, slabs.

pub mod config;
pub mod edges;
pub mod margin;
pub mod occupied;
pub mod slab;

pub use config::{ModelConfig, ModelKind};
pub use edges::{coarse_grain_edges, select_closest, Edge, EdgeField, LatticeWindow};
pub use margin::{build_margin, shell_constant, tail_series, window_margin};
pub use occupied::{sample_boolean, sample_occupied_set, OccupiedSetSample};
pub use slab::{sample_hitting_time, slab_projection_sample};
