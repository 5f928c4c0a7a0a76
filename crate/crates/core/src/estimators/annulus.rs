use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};
use crate::estimators::{estimate, EstimateCI};
use crate::geometry::{label, CapsuleChain};
use crate::real::dist;
use crate::stochastic::{sample_brownian_bridge, sample_brownian_path, Polyline, RngStream};

/// Open Euclidean annulus `{radius - half_width < |x - center| < radius + half_width}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Annulus {
    pub center: Vec<f64>,
    pub radius: f64,
    pub half_width: f64,
}

impl Annulus {
    pub fn new(center: Vec<f64>, radius: f64, half_width: f64) -> Result<Self> {
        ensure(!center.is_empty(), || "annulus centre needs a coordinate".into())?;
        ensure(radius > 0.0 && radius.is_finite(), || format!("annulus radius must be > 0 (got {radius})"))?;
        ensure(half_width > 0.0 && half_width.is_finite(), || {
            format!("annulus half-width must be > 0 (got {half_width})")
        })?;
        Ok(Annulus {
            center,
            radius,
            half_width,
        })
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        (dist(p, &self.center) - self.radius).abs() < self.half_width
    }

    /// Membership in the closed annulus of half-width `inner` around the same circle.
    pub fn contains_closed(&self, p: &[f64], inner: f64) -> bool {
        (dist(p, &self.center) - self.radius).abs() <= inner
    }

    /// Every sampled position lies in the open annulus.
    pub fn contains_path(&self, path: &Polyline<f64>) -> bool {
        path.positions().all(|p| self.contains(p))
    }
}

fn check_dim(annulus: &Annulus, p: &[f64]) -> Result<()> {
    ensure(p.len() == annulus.center.len(), || {
        format!("position of dimension {} in an annulus of dimension {}", p.len(), annulus.center.len())
    })
}

/// Probability that the bridge from `a` to `a_bar` over `[0, duration]`
/// stays in the annulus at every grid time. Both endpoints must lie in the
/// closed annulus of half-width `inner_half_width < annulus.half_width`.
/// Replica `k` draws its bridge from `stream/replica[k]/bridge[0]`.
#[allow(clippy::too_many_arguments)]
pub fn bridge_stay_probability(
    annulus: &Annulus,
    inner_half_width: f64,
    a: &[f64],
    a_bar: &[f64],
    duration: f64,
    step: f64,
    replicas: u64,
    stream: &RngStream,
    level: f64,
) -> Result<EstimateCI> {
    ensure(inner_half_width > 0.0 && inner_half_width < annulus.half_width, || {
        format!("inner half-width must lie in (0, {}) (got {inner_half_width})", annulus.half_width)
    })?;
    check_dim(annulus, a)?;
    check_dim(annulus, a_bar)?;
    ensure(
        annulus.contains_closed(a, inner_half_width) && annulus.contains_closed(a_bar, inner_half_width),
        || "bridge endpoints must lie in the inner annulus".into(),
    )?;
    let trial = |s: &RngStream| -> Result<bool> {
        let w = sample_brownian_bridge(a, a_bar, duration, step, &mut s.child("bridge", 0))?;
        Ok(annulus.contains_path(&w))
    };
    estimate(&trial, replicas, stream, level)
}

/// Probability that free paths from `a1` and `a2`, run to `tau1 - delta` and
/// `tau2 - delta`, both stay in the annulus and come within `tol` of each other.
/// Paths use `stream/replica[k]/a[0]` and `stream/replica[k]/b[0]`.
#[allow(clippy::too_many_arguments)]
pub fn annulus_intersection_probability(
    annulus: &Annulus,
    a1: &[f64],
    a2: &[f64],
    tau1: f64,
    tau2: f64,
    delta: f64,
    step: f64,
    tol: f64,
    replicas: u64,
    stream: &RngStream,
    level: f64,
) -> Result<EstimateCI> {
    let d = annulus.center.len();
    if !(d == 2 || d == 3) {
        return Err(Error::InvalidDimension {
            d,
            reason: "annulus intersections need d in {2, 3}".into(),
        });
    }
    check_dim(annulus, a1)?;
    check_dim(annulus, a2)?;
    ensure(annulus.contains(a1) && annulus.contains(a2), || "starts must lie in the annulus".into())?;
    ensure(delta >= 0.0 && tau1 >= delta && tau2 >= delta, || {
        format!("need 0 <= delta <= tau_i (got delta={delta}, tau=({tau1}, {tau2}))")
    })?;
    ensure(tol >= 0.0 && tol.is_finite(), || format!("tol must be >= 0 (got {tol})"))?;
    let trial = |s: &RngStream| -> Result<bool> {
        let p = sample_brownian_path(a1, tau1 - delta, step, &mut s.child("a", 0))?;
        if !annulus.contains_path(&p) {
            return Ok(false);
        }
        let q = sample_brownian_path(a2, tau2 - delta, step, &mut s.child("b", 0))?;
        if !annulus.contains_path(&q) {
            return Ok(false);
        }
        let chains = [CapsuleChain::new(p, 0.0, 0)?, CapsuleChain::new(q, 0.0, 1)?];
        Ok(label(&chains, tol).len() == 1)
    };
    estimate(&trial, replicas, stream, level)
}
