use serde::{Deserialize, Serialize};

use crate::error::{ensure, Result};
use crate::stochastic::{std_normal_quantile, std_normal_sf};

pub const DEFAULT_LEVEL: f64 = 0.99;

/// Bernoulli estimate with a Wilson score interval.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimateCI {
    pub successes: u64,
    pub replicas: u64,
    pub p_hat: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub level: f64,
}

impl EstimateCI {
    pub fn wilson(successes: u64, replicas: u64, level: f64) -> Result<Self> {
        ensure(replicas >= 1, || "at least one replica is required".into())?;
        ensure(successes <= replicas, || format!("{successes} successes out of {replicas} replicas"))?;
        ensure(level > 0.0 && level < 1.0, || format!("confidence level must lie in (0, 1) (got {level})"))?;
        let n = replicas as f64;
        let p = successes as f64 / n;
        let z = std_normal_quantile(0.5 + level / 2.0);
        let z2 = z * z;
        let denom = 1.0 + z2 / n;
        let centre = (p + z2 / (2.0 * n)) / denom;
        let half = z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
        let mut ci_lo = (centre - half).clamp(0.0, 1.0).min(p);
        let mut ci_hi = (centre + half).clamp(0.0, 1.0).max(p);
        if successes == 0 {
            ci_lo = 0.0;
        }
        if successes == replicas {
            ci_hi = 1.0;
        }
        Ok(EstimateCI {
            successes,
            replicas,
            p_hat: p,
            ci_lo,
            ci_hi,
            level,
        })
    }

    /// Pools the counts of two estimates at this estimate's level.
    pub fn merge(&self, other: &EstimateCI) -> Result<Self> {
        EstimateCI::wilson(self.successes + other.successes, self.replicas + other.replicas, self.level)
    }

    /// Standard error `sqrt(p (1 - p) / n)`.
    pub fn std_error(&self) -> f64 {
        (self.p_hat * (1.0 - self.p_hat) / self.replicas as f64).sqrt()
    }
}

/// Pooled two-proportion z statistic and two-sided p-value.
///
/// When both samples are all successes or all failures the statistic is 0.
pub fn two_proportion_test(a: &EstimateCI, b: &EstimateCI) -> (f64, f64) {
    let (n1, n2) = (a.replicas as f64, b.replicas as f64);
    let pooled = (a.successes + b.successes) as f64 / (n1 + n2);
    let var = pooled * (1.0 - pooled) * (1.0 / n1 + 1.0 / n2);
    if var <= 0.0 {
        return (0.0, 1.0);
    }
    let z = (a.p_hat - b.p_hat) / var.sqrt();
    (z, 2.0 * std_normal_sf(z.abs()))
}
