//! Projection of slab seeds onto the hyperplane `{x_d = 0}`.

use rand::Rng;

use crate::error::{ensure, Error, Result};
use crate::geometry::Aabb;
use crate::stochastic::{sample_poisson_points, PointSet, RngStream};

/// Per-side widening of the sampling window, in units of `sqrt(t)`.
///
/// A kept seed moves by a centred Gaussian with variance at most `t` per
/// coordinate, so seeds further out reach the window with negligible chance.
const REACH_SDS: f64 = 10.0;

/// First time a one-dimensional Brownian motion from `z > 0` hits 0:
/// distributed as `z^2 / Z^2` with `Z` standard normal.
pub fn sample_hitting_time<R: Rng + ?Sized>(z: f64, rng: &mut R) -> f64 {
    let g: f64 = rng.sample(rand_distr::StandardNormal);
    z * z / (g * g)
}

/// Kept and translated seeds of the slabs `window x (k-1, k)`, `k = 1..k_max`,
/// restricted to `window` (a box in dimension `d - 1`).
///
/// Slab `k` uses substream `slab[k]`: its cloud from `points[0]` and the
/// hitting time and displacement of seed `i` from `seed[i]`.
pub fn slab_projection_sample(
    lambda: f64,
    t: f64,
    d: usize,
    window: &Aabb<f64>,
    k_max: usize,
    stream: &RngStream,
) -> Result<PointSet<f64>> {
    if d < 2 {
        return Err(Error::InvalidDimension {
            d,
            reason: "slab projection needs d >= 2".into(),
        });
    }
    ensure(window.dim() == d - 1, || "hyperplane window must have dimension d - 1".into())?;
    ensure(k_max >= 1, || "k_max must be >= 1".into())?;
    ensure(t >= 0.0 && t.is_finite(), || format!("t must be >= 0 (got {t})"))?;
    ensure(lambda >= 0.0 && lambda.is_finite(), || format!("lambda must be >= 0 (got {lambda})"))?;
    let mut out = PointSet::empty(window.clone(), lambda);
    if lambda == 0.0 || t == 0.0 {
        return Ok(out);
    }
    let wide = window.inflate(REACH_SDS * t.sqrt());
    for k in 1..=k_max {
        let slab_stream = stream.child("slab", k as u64);
        let mut lo = wide.lo.clone();
        let mut hi = wide.hi.clone();
        lo.push((k - 1) as f64);
        hi.push(k as f64);
        let slab = Aabb::new(lo, hi)?;
        let seeds = sample_poisson_points::<f64, _>(&slab, lambda, &mut slab_stream.child("points", 0))?;
        for (i, x) in seeds.iter().enumerate() {
            let mut rng = slab_stream.child("seed", i as u64);
            let tau = sample_hitting_time(x[d - 1], &mut rng);
            if tau > t {
                continue;
            }
            let sd = tau.sqrt();
            let moved: Vec<f64> = x[..d - 1]
                .iter()
                .map(|&c| c + sd * rng.sample::<f64, _>(rand_distr::StandardNormal))
                .collect();
            if window.contains(&moved) {
                out.points.extend_from_slice(&moved);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stochastic::derive_stream;

    #[test]
    fn zero_intensity_empty() {
        let w = Aabb::crossing_box(&[10.0]).unwrap();
        let s = slab_projection_sample(0.0, 1.0, 2, &w, 20, &derive_stream(1, &[("s", 0)]).unwrap()).unwrap();
        assert!(s.is_empty());
    }

    #[test]
    fn needs_two_dimensions() {
        let w = Aabb::crossing_box(&[10.0]).unwrap();
        let err = slab_projection_sample(1.0, 1.0, 1, &w, 20, &derive_stream(1, &[("s", 0)]).unwrap());
        assert!(matches!(err, Err(Error::InvalidDimension { .. })));
    }

    #[test]
    fn kept_points_stay_in_window() {
        let w = Aabb::crossing_box(&[5.0, 5.0]).unwrap();
        let s = slab_projection_sample(2.0, 2.0, 3, &w, 24, &derive_stream(4, &[("s", 0)]).unwrap()).unwrap();
        assert!(!s.is_empty());
        assert!(s.iter().all(|p| w.contains(p)));
    }
}
