use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};
use crate::geometry::Aabb;
use crate::real::Real;
use crate::stochastic::RadiusDistribution;

/// Which occupied set a configuration describes.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ModelKind {
    /// Radius-`r` sausages around Brownian paths run to time `t`.
    #[default]
    Sausage,
    /// Balls with i.i.d. radii at the Poisson points.
    Boolean { radius: RadiusDistribution },
}

/// Parameters of one occupied-set experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelConfig {
    pub d: usize,
    pub lambda: f64,
    pub t: f64,
    pub r: f64,
    /// Time step of the discretized paths.
    pub step: f64,
    /// Crossing box `[0, N_1] x ... x [0, N_d]`.
    pub extents: Vec<f64>,
    /// Per-side inflation of the sampling window around the crossing box.
    pub margin: f64,
    /// Contact tolerance; `None` selects [`ModelConfig::default_tol`].
    pub tol: Option<f64>,
    pub master_seed: u64,
    #[serde(default)]
    pub model: ModelKind,
}

impl ModelConfig {
    /// Sausage model in the box `N x 3N x ... x 3N` with no margin.
    pub fn standard(d: usize, lambda: f64, t: f64, r: f64, step: f64, n: f64, master_seed: u64) -> Self {
        let mut extents = vec![3.0 * n; d];
        if d > 0 {
            extents[0] = n;
        }
        ModelConfig {
            d,
            lambda,
            t,
            r,
            step,
            extents,
            margin: 0.0,
            tol: None,
            master_seed,
            model: ModelKind::Sausage,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.d == 0 {
            return Err(Error::InvalidDimension {
                d: 0,
                reason: "dimension must be >= 1".into(),
            });
        }
        ensure(self.extents.len() == self.d, || {
            format!("{} box extents given for dimension {}", self.extents.len(), self.d)
        })?;
        ensure(self.extents.iter().all(|&n| n > 0.0 && n.is_finite()), || "box extents must be > 0".into())?;
        ensure(self.lambda >= 0.0 && self.lambda.is_finite(), || format!("lambda must be >= 0 (got {})", self.lambda))?;
        ensure(self.t >= 0.0 && self.t.is_finite(), || format!("t must be >= 0 (got {})", self.t))?;
        ensure(self.r >= 0.0 && self.r.is_finite(), || format!("r must be >= 0 (got {})", self.r))?;
        ensure(self.step > 0.0 && self.step.is_finite(), || format!("step must be > 0 (got {})", self.step))?;
        ensure(self.margin >= 0.0 && self.margin.is_finite(), || format!("margin must be >= 0 (got {})", self.margin))?;
        if let Some(tol) = self.tol {
            ensure(tol >= 0.0 && tol.is_finite(), || format!("tol must be >= 0 (got {tol})"))?;
        }
        if let ModelKind::Boolean { radius } = &self.model {
            radius.validate()?;
        }
        Ok(())
    }

    /// `3 sqrt(min(step, t))` for zero-radius sausages in `d` = 2 or 3, else 0.
    pub fn default_tol(&self) -> f64 {
        let pathlike = matches!(self.model, ModelKind::Sausage) && self.r == 0.0 && (self.d == 2 || self.d == 3);
        if pathlike {
            3.0 * self.step.min(self.t).sqrt()
        } else {
            0.0
        }
    }

    pub fn resolved_tol(&self) -> f64 {
        self.tol.unwrap_or_else(|| self.default_tol())
    }

    /// Largest box side; plays the role of `3N` for the standard box.
    pub fn max_extent(&self) -> f64 {
        self.extents.iter().copied().fold(0.0, f64::max)
    }

    pub fn crossing_box<F: Real>(&self) -> Result<Aabb<F>> {
        Aabb::crossing_box(&self.extents.iter().map(|&x| F::of(x)).collect::<Vec<_>>())
    }

    pub fn window<F: Real>(&self) -> Result<Aabb<F>> {
        Ok(self.crossing_box::<F>()?.inflate(F::of(self.margin)))
    }

    /// Radius law whose tail bounds how far material reaches from its seed.
    pub fn reach_distribution(&self) -> RadiusDistribution {
        match &self.model {
            ModelKind::Sausage => RadiusDistribution::SupOfBrownian {
                t: self.t,
                r_offset: self.r + 0.5 * self.resolved_tol(),
                d: self.d,
                step: self.step,
            },
            ModelKind::Boolean { radius } => radius.clone(),
        }
    }
}
