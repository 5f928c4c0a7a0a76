use std::marker::PhantomData;

use crate::error::Result;
use crate::estimators::{estimate, BernoulliTrial, EstimateCI};
use crate::geometry::{crossing, CapsuleChain};
use crate::models::{sample_occupied_set, ModelConfig};
use crate::real::Real;
use crate::stochastic::RngStream;

/// Crossing indicator of a freshly sampled occupied set, computed in `F`.
#[derive(Clone, Debug)]
pub struct CrossingTrial<F> {
    pub config: ModelConfig,
    scalar: PhantomData<F>,
}

impl<F: Real> CrossingTrial<F> {
    pub fn new(config: ModelConfig) -> Result<Self> {
        config.validate()?;
        Ok(CrossingTrial {
            config,
            scalar: PhantomData,
        })
    }
}

impl<F: Real> BernoulliTrial for CrossingTrial<F> {
    fn trial(&self, stream: &RngStream) -> Result<bool> {
        if self.config.lambda == 0.0 {
            return Ok(false);
        }
        let sample = sample_occupied_set::<F>(&self.config, stream)?;
        crosses(&self.config, &sample.chains)
    }
}

/// Crossing indicator of the given chains in the configured box.
pub fn crosses<F: Real>(config: &ModelConfig, chains: &[CapsuleChain<F>]) -> Result<bool> {
    let b = config.crossing_box::<F>()?;
    let labeling = crate::geometry::label(chains, F::of(config.resolved_tol()));
    Ok(crossing(&labeling, chains, &b))
}

/// Estimate of `P(CROSS)` for `config`, replica `k` on `stream/replica[k]`.
pub fn crossing_probability(config: &ModelConfig, replicas: u64, stream: &RngStream, level: f64) -> Result<EstimateCI> {
    estimate(&CrossingTrial::<f64>::new(config.clone())?, replicas, stream, level)
}
