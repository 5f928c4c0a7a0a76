//! Bisection for the parameter at which a crossing probability reaches a target.

use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};
use crate::estimators::{estimate, extend_estimate, BernoulliTrial, CrossingTrial, EstimateCI};
use crate::models::ModelConfig;
use crate::stochastic::RngStream;

/// Stop once `hi - lo <= RELATIVE_WIDTH * (hi + lo) / 2`.
pub const RELATIVE_WIDTH: f64 = 0.2;
/// Replicas at a point may grow to this multiple of the base count.
pub const DEFAULT_BUDGET_FACTOR: u64 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    Time,
    Intensity,
}

/// A family of experiments indexed by a real parameter.
pub trait TrialFamily: Sync {
    fn at(&self, param: f64) -> Result<Box<dyn BernoulliTrial + '_>>;
}

/// The crossing experiment of `template` with `t` or `lambda` replaced.
#[derive(Clone, Debug)]
pub struct ConfigFamily {
    pub template: ModelConfig,
    pub axis: Axis,
}

impl ConfigFamily {
    pub fn config_at(&self, param: f64) -> ModelConfig {
        let mut c = self.template.clone();
        match self.axis {
            Axis::Time => c.t = param,
            Axis::Intensity => c.lambda = param,
        }
        c
    }
}

impl TrialFamily for ConfigFamily {
    fn at(&self, param: f64) -> Result<Box<dyn BernoulliTrial + '_>> {
        Ok(Box::new(CrossingTrial::<f64>::new(self.config_at(param))?))
    }
}

/// Noise-free response `1{param > threshold}`.
#[derive(Clone, Copy, Debug)]
pub struct StepFamily {
    pub threshold: f64,
}

impl TrialFamily for StepFamily {
    fn at(&self, param: f64) -> Result<Box<dyn BernoulliTrial + '_>> {
        let above = param > self.threshold;
        Ok(Box::new(move |_: &RngStream| -> Result<bool> { Ok(above) }))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Below,
    Above,
    Straddle,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BisectionStep {
    pub param: f64,
    pub estimate: EstimateCI,
    pub side: Side,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdBracket {
    pub axis: Axis,
    pub lo: f64,
    pub hi: f64,
    pub p_lo: EstimateCI,
    pub p_hi: EstimateCI,
    pub target: f64,
    /// Iterations ran out before the relative width was reached.
    pub budget_exhausted: bool,
    /// A midpoint and both quarter points straddled the target.
    pub unresolved: bool,
    pub history: Vec<BisectionStep>,
}

impl ThresholdBracket {
    pub fn relative_width(&self) -> f64 {
        (self.hi - self.lo) / (0.5 * (self.hi + self.lo))
    }
}

#[derive(Clone, Debug)]
pub struct BisectOptions {
    pub target: f64,
    pub replicas: u64,
    pub max_iters: usize,
    pub level: f64,
    pub budget_factor: u64,
}

impl Default for BisectOptions {
    fn default() -> Self {
        BisectOptions {
            target: 0.5,
            replicas: 400,
            max_iters: 20,
            level: 0.99,
            budget_factor: DEFAULT_BUDGET_FACTOR,
        }
    }
}

fn side(e: &EstimateCI, target: f64) -> Side {
    if e.ci_hi < target {
        Side::Below
    } else if e.ci_lo > target {
        Side::Above
    } else {
        Side::Straddle
    }
}

/// Estimates at `param`, doubling replicas while the interval straddles the target.
///
/// Every parameter value uses the same replica streams, so a pathwise
/// monotone model gives monotone estimates along the axis.
fn resolve<Fam: TrialFamily + ?Sized>(
    family: &Fam,
    param: f64,
    opts: &BisectOptions,
    stream: &RngStream,
    history: &mut Vec<BisectionStep>,
) -> Result<(EstimateCI, Side)> {
    let trial = family.at(param)?;
    let mut e = estimate(trial.as_ref(), opts.replicas, stream, opts.level)?;
    let cap = opts.replicas * opts.budget_factor.max(1);
    let mut s = side(&e, opts.target);
    while s == Side::Straddle && e.replicas * 2 <= cap {
        e = extend_estimate(trial.as_ref(), &e, e.replicas * 2, stream)?;
        s = side(&e, opts.target);
    }
    history.push(BisectionStep {
        param,
        estimate: e,
        side: s,
    });
    Ok((e, s))
}

/// CI-separated bisection between `lo0` and `hi0`.
pub fn threshold_bisect<Fam: TrialFamily + ?Sized>(
    family: &Fam,
    axis: Axis,
    lo0: f64,
    hi0: f64,
    opts: &BisectOptions,
    stream: &RngStream,
) -> Result<ThresholdBracket> {
    ensure(lo0 >= 0.0 && lo0 < hi0 && hi0.is_finite(), || format!("need 0 <= lo0 < hi0 (got {lo0}, {hi0})"))?;
    ensure(opts.target > 0.0 && opts.target < 1.0, || format!("target must lie in (0, 1) (got {})", opts.target))?;
    ensure(opts.replicas >= 1, || "at least one replica is required".into())?;
    let mut history = Vec::new();
    let (mut p_lo, s_lo) = resolve(family, lo0, opts, stream, &mut history)?;
    if s_lo != Side::Below {
        return Err(Error::UnbracketedTarget {
            target: opts.target,
            reason: format!("estimate at lo0 = {lo0} is not below the target (p_hat = {})", p_lo.p_hat),
        });
    }
    let (mut p_hi, s_hi) = resolve(family, hi0, opts, stream, &mut history)?;
    if s_hi != Side::Above {
        return Err(Error::UnbracketedTarget {
            target: opts.target,
            reason: format!("estimate at hi0 = {hi0} is not above the target (p_hat = {})", p_hi.p_hat),
        });
    }
    let (mut lo, mut hi) = (lo0, hi0);
    let mut iters = 0;
    let mut unresolved = false;
    let narrow = |lo: f64, hi: f64| hi - lo <= RELATIVE_WIDTH * 0.5 * (hi + lo);
    while !narrow(lo, hi) && iters < opts.max_iters {
        iters += 1;
        let mid = 0.5 * (lo + hi);
        let (e, s) = resolve(family, mid, opts, stream, &mut history)?;
        match s {
            Side::Below => (lo, p_lo) = (mid, e),
            Side::Above => (hi, p_hi) = (mid, e),
            Side::Straddle => {
                let mut moved = false;
                let q3 = 0.5 * (mid + hi);
                let (e3, s3) = resolve(family, q3, opts, stream, &mut history)?;
                if s3 == Side::Above {
                    (hi, p_hi) = (q3, e3);
                    moved = true;
                }
                let q1 = 0.5 * (lo + mid);
                let (e1, s1) = resolve(family, q1, opts, stream, &mut history)?;
                if s1 == Side::Below {
                    (lo, p_lo) = (q1, e1);
                    moved = true;
                }
                if !moved {
                    unresolved = true;
                    break;
                }
            }
        }
    }
    Ok(ThresholdBracket {
        axis,
        lo,
        hi,
        p_lo,
        p_hi,
        target: opts.target,
        budget_exhausted: !narrow(lo, hi) && !unresolved,
        unresolved,
        history,
    })
}
