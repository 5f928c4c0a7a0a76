//! Replicated Bernoulli experiments on labeled substreams.

use rayon::prelude::*;

use crate::error::{ensure, Result};
use crate::estimators::EstimateCI;
use crate::stochastic::RngStream;

/// One random yes/no experiment, a pure function of its stream.
pub trait BernoulliTrial: Sync {
    fn trial(&self, stream: &RngStream) -> Result<bool>;
}

impl<G: Fn(&RngStream) -> Result<bool> + Sync> BernoulliTrial for G {
    fn trial(&self, stream: &RngStream) -> Result<bool> {
        self(stream)
    }
}

/// Successes among replicas `start..end`; replica `k` runs on `replica[k]`.
///
/// Replicas run in parallel and the count is order independent.
pub fn count_successes<T: BernoulliTrial + ?Sized>(trial: &T, stream: &RngStream, start: u64, end: u64) -> Result<u64> {
    (start..end)
        .into_par_iter()
        .map(|k| trial.trial(&stream.child("replica", k)).map(u64::from))
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

pub fn estimate<T: BernoulliTrial + ?Sized>(trial: &T, replicas: u64, stream: &RngStream, level: f64) -> Result<EstimateCI> {
    ensure(replicas >= 1, || "at least one replica is required".into())?;
    let s = count_successes(trial, stream, 0, replicas)?;
    EstimateCI::wilson(s, replicas, level)
}

/// Extends `current` to `replicas` replicas, reusing the replicas already run.
pub fn extend_estimate<T: BernoulliTrial + ?Sized>(
    trial: &T,
    current: &EstimateCI,
    replicas: u64,
    stream: &RngStream,
) -> Result<EstimateCI> {
    if replicas <= current.replicas {
        return Ok(*current);
    }
    let extra = count_successes(trial, stream, current.replicas, replicas)?;
    EstimateCI::wilson(current.successes + extra, replicas, current.level)
}
