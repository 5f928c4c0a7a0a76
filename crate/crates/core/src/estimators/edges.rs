use crate::error::{ensure, Error, Result};
use crate::estimators::{count_successes, estimate, EstimateCI};
use crate::geometry::{label, CapsuleChain};
use crate::models::{coarse_grain_edges, LatticeWindow};
use crate::stochastic::{sample_brownian_path, RngStream};

/// Parameters of the two-site coarse-grained experiment.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EdgeParams {
    pub half_size: f64,
    pub t: f64,
    pub lambda: f64,
    pub d: usize,
    pub step: f64,
    pub tol: f64,
}

/// `P(X_(0, e_1) = 1)` from [`coarse_grain_edges`] on the sites `0` and `e_1`.
pub fn edge_open_probability(p: &EdgeParams, replicas: u64, stream: &RngStream, level: f64) -> Result<EstimateCI> {
    let window = LatticeWindow::pair(p.d);
    let trial = |s: &RngStream| -> Result<bool> {
        let f = coarse_grain_edges(p.half_size, p.t, p.lambda, p.d, &window, p.step, p.tol, s)?;
        Ok(f.edges[0].open)
    };
    estimate(&trial, replicas, stream, level)
}

/// Fraction of sites with at least one Poisson point, over `replicas` runs of
/// the two-site window (so `2 * replicas` sites, which are independent).
pub fn site_occupancy(p: &EdgeParams, replicas: u64, stream: &RngStream, level: f64) -> Result<EstimateCI> {
    let window = LatticeWindow::pair(p.d);
    let mut occupied = 0;
    for site in 0..2u64 {
        let trial = |s: &RngStream| -> Result<bool> {
            let f = coarse_grain_edges(p.half_size, 0.0, p.lambda, p.d, &window, p.step, p.tol, s)?;
            Ok(f.counts[site as usize] >= 1)
        };
        occupied += count_successes(&trial, stream, 0, replicas)?;
    }
    EstimateCI::wilson(occupied, 2 * replicas, level)
}

/// Checks the dimension rule for path intersections; `Ok(true)` flags a
/// dimension >= 4 run, which is meaningful only through `tol > 0`.
pub fn intersection_dimension_flag(d: usize, tol: f64) -> Result<bool> {
    match d {
        2 | 3 => Ok(false),
        d if d >= 4 && tol > 0.0 => Ok(true),
        _ => Err(Error::InvalidDimension {
            d,
            reason: "path intersections need d in {2, 3} (or d >= 4 with tol > 0)".into(),
        }),
    }
}

/// Probability that paths from `0` and `separation * e_1`, run to time `t`,
/// come within `tol`. Paths use substreams `a[0]` and `b[0]` of each replica.
pub fn path_intersection_probability(
    separation: f64,
    t: f64,
    d: usize,
    step: f64,
    tol: f64,
    replicas: u64,
    stream: &RngStream,
    level: f64,
) -> Result<EstimateCI> {
    intersection_dimension_flag(d, tol)?;
    ensure(separation >= 0.0 && separation.is_finite(), || format!("separation must be >= 0 (got {separation})"))?;
    let origin = vec![0.0; d];
    let mut other = vec![0.0; d];
    other[0] = separation;
    let trial = |s: &RngStream| -> Result<bool> {
        let a = sample_brownian_path(&origin, t, step, &mut s.child("a", 0))?;
        let b = sample_brownian_path(&other, t, step, &mut s.child("b", 0))?;
        let chains = [CapsuleChain::new(a, 0.0, 0)?, CapsuleChain::new(b, 0.0, 1)?];
        Ok(label(&chains, tol).len() == 1)
    };
    estimate(&trial, replicas, stream, level)
}
