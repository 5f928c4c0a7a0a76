//! Radius laws for Boolean models.

use rand::Rng;
use rand_distr::{Distribution, Exp};
use serde::{Deserialize, Serialize};

use crate::error::{ensure, invalid, Result};
use crate::stochastic::brownian::{sample_brownian_path, sup_radius};
use crate::stochastic::special::std_normal_sf;

/// Distribution of ball radii.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RadiusDistribution {
    /// Point mass at `r`.
    Deterministic { r: f64 },
    /// `sup_{s<=t} ||B_s - B_0|| + r_offset` in dimension `d`, simulated with step `step`.
    SupOfBrownian {
        t: f64,
        r_offset: f64,
        d: usize,
        step: f64,
    },
    /// Uniform over the listed values.
    Empirical { samples: Vec<f64> },
    /// `P(rho >= x) = exp(-c x)` for `x >= r0`, atom at `r0` otherwise.
    ExponentialTail { c: f64, r0: f64 },
}

impl RadiusDistribution {
    pub fn validate(&self) -> Result<()> {
        match self {
            RadiusDistribution::Deterministic { r } => {
                ensure(r.is_finite() && *r >= 0.0, || format!("radius must be >= 0 (got {r})"))
            }
            RadiusDistribution::SupOfBrownian {
                t,
                r_offset,
                d,
                step,
            } => {
                ensure(t.is_finite() && *t >= 0.0, || format!("time must be >= 0 (got {t})"))?;
                ensure(r_offset.is_finite() && *r_offset >= 0.0, || {
                    format!("radius offset must be >= 0 (got {r_offset})")
                })?;
                ensure(*d >= 1, || "dimension must be >= 1".into())?;
                ensure(step.is_finite() && *step > 0.0, || format!("step must be > 0 (got {step})"))
            }
            RadiusDistribution::Empirical { samples } => {
                ensure(!samples.is_empty(), || "empirical radius law needs samples".into())?;
                ensure(samples.iter().all(|s| s.is_finite() && *s >= 0.0), || {
                    "empirical radii must be finite and >= 0".into()
                })
            }
            RadiusDistribution::ExponentialTail { c, r0 } => {
                ensure(c.is_finite() && *c > 0.0, || format!("tail rate must be > 0 (got {c})"))?;
                ensure(r0.is_finite() && *r0 > 0.0, || format!("tail onset must be > 0 (got {r0})"))
            }
        }
    }

    /// Upper bound on `P(rho >= x)`; exact except for `SupOfBrownian`, which
    /// uses the per-coordinate reflection bound `2d * 2 (1 - Phi(x' / sqrt(d t)))`
    /// with `x' = x - r_offset`.
    pub fn tail(&self, x: f64) -> f64 {
        match self {
            RadiusDistribution::Deterministic { r } => f64::from(x <= *r),
            RadiusDistribution::SupOfBrownian { t, r_offset, d, .. } => {
                let l = x - r_offset;
                if l <= 0.0 {
                    1.0
                } else if *t == 0.0 {
                    0.0
                } else {
                    let dd = *d as f64;
                    (4.0 * dd * std_normal_sf(l / (dd * t).sqrt())).min(1.0)
                }
            }
            RadiusDistribution::Empirical { samples } => {
                samples.iter().filter(|&&s| s >= x).count() as f64 / samples.len() as f64
            }
            RadiusDistribution::ExponentialTail { c, r0 } => {
                if x <= *r0 {
                    1.0
                } else {
                    (-c * x).exp()
                }
            }
        }
    }

    /// Largest attainable radius, if bounded.
    pub fn support(&self) -> Option<f64> {
        match self {
            RadiusDistribution::Deterministic { r } => Some(*r),
            RadiusDistribution::SupOfBrownian { t, r_offset, .. } => (*t == 0.0).then_some(*r_offset),
            RadiusDistribution::Empirical { samples } => Some(samples.iter().copied().fold(0.0, f64::max)),
            RadiusDistribution::ExponentialTail { .. } => None,
        }
    }

    /// Every variant here has light tails, so all moments are finite once the
    /// parameters are valid.
    pub fn has_finite_moment(&self, _d: usize) -> bool {
        self.validate().is_ok()
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<f64> {
        match self {
            RadiusDistribution::Deterministic { r } => Ok(*r),
            RadiusDistribution::SupOfBrownian {
                t,
                r_offset,
                d,
                step,
            } => {
                let origin = vec![0.0f64; *d];
                let path = sample_brownian_path(&origin, *t, *step, rng)?;
                Ok(sup_radius(&path) + r_offset)
            }
            RadiusDistribution::Empirical { samples } => {
                Ok(samples[rng.random_range(0..samples.len())])
            }
            RadiusDistribution::ExponentialTail { c, r0 } => {
                let e = Exp::new(*c).map_err(|e| invalid(e.to_string()))?;
                Ok(e.sample(rng).max(*r0))
            }
        }
    }
}
