//! Discretized Brownian motion and Brownian bridges.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{ensure, invalid, Result};
use crate::real::{dist, Real};

/// Relative slack used when deciding whether `horizon / step` is an integer.
const GRID_SNAP: f64 = 1e-9;

/// A path sampled on the grid `0, step, 2 step, ..., horizon`.
///
/// The final increment is shorter when `horizon` is not a multiple of `step`.
/// Coordinates are stored flat, `dim` values per position.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Polyline<F> {
    pub dim: usize,
    pub step: f64,
    pub horizon: f64,
    pub coords: Vec<F>,
}

impl<F: Real> Polyline<F> {
    /// A single position (a path observed for zero time).
    pub fn point(start: &[F]) -> Self {
        Polyline {
            dim: start.len(),
            step: 1.0,
            horizon: 0.0,
            coords: start.to_vec(),
        }
    }

    /// Straight path through the given positions; `step` is nominal.
    pub fn from_positions(dim: usize, coords: Vec<F>) -> Result<Self> {
        ensure(dim >= 1 && !coords.is_empty() && coords.len() % dim == 0, || {
            format!("{} coordinates do not form positions of dimension {dim}", coords.len())
        })?;
        let segments = coords.len() / dim - 1;
        Ok(Polyline {
            dim,
            step: 1.0,
            horizon: segments as f64,
            coords,
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    #[inline]
    pub fn position(&self, i: usize) -> &[F] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn start(&self) -> &[F] {
        self.position(0)
    }

    pub fn end(&self) -> &[F] {
        self.position(self.len() - 1)
    }

    pub fn positions(&self) -> std::slice::ChunksExact<'_, F> {
        self.coords.chunks_exact(self.dim)
    }

    /// Number of segments; a single position counts as one degenerate segment.
    pub fn segment_count(&self) -> usize {
        self.len().saturating_sub(1).max(1)
    }

    /// Endpoints of segment `i`.
    pub fn segment(&self, i: usize) -> (&[F], &[F]) {
        if self.len() == 1 {
            let p = self.position(0);
            (p, p)
        } else {
            (self.position(i), self.position(i + 1))
        }
    }

    pub fn translate(&mut self, v: &[F]) {
        for p in self.coords.chunks_exact_mut(self.dim) {
            for (x, &dx) in p.iter_mut().zip(v) {
                *x += dx;
            }
        }
    }

    pub fn scale(&mut self, factor: F) {
        for x in &mut self.coords {
            *x *= factor;
        }
    }
}

/// Number of full steps and the residual length of the last (short) step.
pub(crate) fn time_grid(horizon: f64, step: f64) -> (usize, f64) {
    let ratio = horizon / step;
    let nearest = ratio.round();
    if (ratio - nearest).abs() <= GRID_SNAP * nearest.max(1.0) {
        (nearest as usize, 0.0)
    } else {
        let full = ratio.floor();
        (full as usize, horizon - full * step)
    }
}

/// Number of positions `1 + ceil(horizon / step)` of a sampled path.
pub fn grid_len(horizon: f64, step: f64) -> usize {
    let (full, residual) = time_grid(horizon, step);
    1 + full + usize::from(residual > 0.0)
}

/// Samples `B^start` on `[0, horizon]` with step `step`.
///
/// Increments are i.i.d. centred Gaussians with per-coordinate variance
/// `step`; the last increment reuses the next Gaussian draw scaled to the
/// residual time. Consequently the path to `t` is a geometric subset of the
/// path to any `t' > t` drawn from the same stream.
pub fn sample_brownian_path<F: Real, R: Rng + ?Sized>(
    start: &[F],
    horizon: f64,
    step: f64,
    rng: &mut R,
) -> Result<Polyline<F>> {
    ensure(step > 0.0 && step.is_finite(), || format!("step must be positive (got {step})"))?;
    ensure(horizon >= 0.0 && horizon.is_finite(), || {
        format!("time horizon must be non-negative (got {horizon})")
    })?;
    ensure(!start.is_empty(), || "start position needs at least one coordinate".into())?;
    let dim = start.len();
    let (full, residual) = time_grid(horizon, step);
    let n = 1 + full + usize::from(residual > 0.0);
    let mut coords = Vec::with_capacity(n * dim);
    coords.extend_from_slice(start);
    let sd_full = F::of(step.sqrt());
    let sd_last = F::of(residual.sqrt());
    for k in 1..n {
        let sd = if k <= full { sd_full } else { sd_last };
        let base = (k - 1) * dim;
        for j in 0..dim {
            let z = F::std_normal(rng);
            let x = coords[base + j] + sd * z;
            coords.push(x);
        }
    }
    Ok(Polyline {
        dim,
        step,
        horizon,
        coords,
    })
}

/// Samples a Brownian bridge from `a` at time 0 to `a_bar` at time `duration`.
///
/// A free path `B` from `a` is drawn on the grid and corrected by
/// `W_s = B_s - (s / duration) (B_duration - a_bar)`. The terminal position is
/// set to `a_bar` exactly.
pub fn sample_brownian_bridge<F: Real, R: Rng + ?Sized>(
    a: &[F],
    a_bar: &[F],
    duration: f64,
    step: f64,
    rng: &mut R,
) -> Result<Polyline<F>> {
    ensure(duration > 0.0 && duration.is_finite(), || {
        format!("bridge duration must be positive (got {duration})")
    })?;
    ensure(step > 0.0 && step <= duration, || {
        format!("bridge step must lie in (0, {duration}] (got {step})")
    })?;
    if a.len() != a_bar.len() {
        return Err(invalid("bridge endpoints differ in dimension"));
    }
    let mut path = sample_brownian_path(a, duration, step, rng)?;
    let dim = path.dim;
    let n = path.len();
    let (full, _) = time_grid(duration, step);
    let gap: Vec<F> = path.end().iter().zip(a_bar).map(|(&b, &e)| b - e).collect();
    let total = F::of(duration);
    for i in 1..n - 1 {
        let s = if i <= full { F::of(i as f64 * step) } else { total };
        let w = s / total;
        for j in 0..dim {
            path.coords[i * dim + j] -= w * gap[j];
        }
    }
    let last = (n - 1) * dim;
    path.coords[last..last + dim].copy_from_slice(a_bar);
    Ok(path)
}

/// `max_i ||path_i - path_0||`, the discretized `sup_{s <= t} ||B_s - x||`.
pub fn sup_radius<F: Real>(path: &Polyline<F>) -> F {
    let start = path.start();
    path.positions()
        .map(|p| dist(p, start))
        .fold(F::zero(), F::max)
}
