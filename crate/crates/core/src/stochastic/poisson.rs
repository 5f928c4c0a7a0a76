//! Homogeneous Poisson point processes in axis-aligned windows.

use rand::Rng;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma_ur;

use crate::error::{ensure, Result};
use crate::geometry::Aabb;
use crate::real::Real;

/// Points of a Poisson cloud, stored flat (`dim` coordinates each).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointSet<F> {
    pub dim: usize,
    pub points: Vec<F>,
    pub window: Aabb<F>,
    pub intensity: f64,
}

impl<F: Real> PointSet<F> {
    pub fn empty(window: Aabb<F>, intensity: f64) -> Self {
        PointSet {
            dim: window.dim(),
            points: Vec::new(),
            window,
            intensity,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &[F] {
        &self.points[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> std::slice::ChunksExact<'_, F> {
        self.points.chunks_exact(self.dim)
    }
}

/// Inverse Poisson CDF at `u`: the smallest `k` with `P(X <= k) >= u`.
///
/// For fixed `u` the result is nondecreasing in `mean`, which couples clouds
/// of different intensities drawn from one stream by superposition.
pub fn poisson_quantile(mean: f64, u: f64) -> Result<u64> {
    ensure(mean >= 0.0 && mean.is_finite(), || format!("Poisson mean must be finite and >= 0 (got {mean})"))?;
    let cdf = |k: u64| gamma_ur(k as f64 + 1.0, mean);
    if mean == 0.0 || u <= 0.0 || cdf(0) >= u {
        return Ok(0);
    }
    let mut lo = 0u64;
    let mut hi = (mean + 10.0 * mean.sqrt() + 10.0).ceil() as u64;
    while cdf(hi) < u {
        lo = hi;
        hi = hi.saturating_mul(2);
    }
    // invariant: cdf(lo) < u <= cdf(hi)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if cdf(mid) >= u {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Samples a Poisson cloud of intensity `lambda` in `window`.
///
/// One uniform drives the count through [`poisson_quantile`]; positions are
/// then drawn in sequence, so a denser cloud on the same stream extends the
/// sparser one.
pub fn sample_poisson_points<F: Real, R: Rng + ?Sized>(
    window: &Aabb<F>,
    lambda: f64,
    rng: &mut R,
) -> Result<PointSet<F>> {
    ensure(lambda >= 0.0 && lambda.is_finite(), || format!("intensity must be finite and >= 0 (got {lambda})"))?;
    ensure(window.is_nondegenerate(), || "sampling window must be nondegenerate".into())?;
    let u: f64 = rng.random();
    let count = poisson_quantile(lambda * window.volume().as_f64(), u)? as usize;
    let dim = window.dim();
    let mut points = Vec::with_capacity(count * dim);
    for _ in 0..count {
        for j in 0..dim {
            let w = F::unit_uniform(rng);
            let x = window.lo[j] + w * window.extent(j);
            // rounding in f32 can land on the upper edge; keep it closed
            points.push(x.min(window.hi[j]));
        }
    }
    Ok(PointSet {
        dim,
        points,
        window: window.clone(),
        intensity: lambda,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stochastic::rng::derive_stream;

    #[test]
    fn zero_intensity_is_empty() {
        let w = Aabb::crossing_box(&[3.0f64, 3.0]).unwrap();
        let mut rng = derive_stream(1, &[("points", 0)]).unwrap();
        assert!(sample_poisson_points(&w, 0.0, &mut rng).unwrap().is_empty());
    }

    #[test]
    fn negative_intensity_rejected() {
        let w = Aabb::crossing_box(&[1.0f64]).unwrap();
        let mut rng = derive_stream(1, &[("points", 0)]).unwrap();
        assert!(sample_poisson_points(&w, -1.0, &mut rng).is_err());
    }

    #[test]
    fn points_inside_window() {
        let w = Aabb::new(vec![-2.0f32, 1.0], vec![3.0, 1.5]).unwrap();
        let mut rng = derive_stream(9, &[("points", 0)]).unwrap();
        let s = sample_poisson_points(&w, 40.0, &mut rng).unwrap();
        assert!(s.len() > 0);
        assert!(s.iter().all(|p| w.contains(p)));
    }

    #[test]
    fn superposition_coupling() {
        let w = Aabb::crossing_box(&[4.0f64, 4.0]).unwrap();
        let draw = |lambda| {
            let mut rng = derive_stream(3, &[("points", 0)]).unwrap();
            sample_poisson_points(&w, lambda, &mut rng).unwrap()
        };
        let sparse = draw(1.0);
        let dense = draw(2.5);
        assert!(sparse.len() <= dense.len());
        assert_eq!(&dense.points[..sparse.points.len()], &sparse.points[..]);
    }

    #[test]
    fn quantile_is_monotone_in_mean() {
        for &u in &[0.01, 0.3, 0.5, 0.97] {
            let mut prev = 0;
            for m in [0.1, 1.0, 5.0, 50.0, 900.0, 5000.0] {
                let k = poisson_quantile(m, u).unwrap();
                assert!(k >= prev);
                prev = k;
            }
        }
    }
}
