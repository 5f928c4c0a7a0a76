use serde::{Deserialize, Serialize};

use crate::error::{ensure, Result};
use crate::estimators::{crossing_probability, two_proportion_test, EstimateCI};
use crate::models::ModelConfig;
use crate::stochastic::RngStream;

/// Significance of the two-proportion test.
pub const SCALE_TEST_ALPHA: f64 = 0.01;

/// Image of `base` under `x -> eta^{-1/d} x`: intensity times `eta`, time
/// and step times `eta^{-2/d}`, lengths times `eta^{-1/d}`.
pub fn scaled_config(base: &ModelConfig, eta: f64) -> Result<ModelConfig> {
    ensure(eta > 0.0 && eta.is_finite(), || format!("eta must be > 0 (got {eta})"))?;
    base.validate()?;
    let len = eta.powf(-1.0 / base.d as f64);
    let time = len * len;
    let mut c = base.clone();
    c.lambda *= eta;
    c.t *= time;
    c.step *= time;
    c.r *= len;
    c.margin *= len;
    c.extents.iter_mut().for_each(|n| *n *= len);
    c.tol = base.tol.map(|tol| tol * len);
    Ok(c)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScaleReport {
    pub base: EstimateCI,
    pub scaled: EstimateCI,
    pub z: f64,
    pub p_value: f64,
    pub alpha: f64,
    pub pass: bool,
}

/// Two-proportion comparison of the crossing probabilities of two configurations.
/// Arms use `stream/arm[0]` and `stream/arm[1]`, or `stream` for both when
/// `shared_seeds` is set.
pub fn compare_crossing(
    a: &ModelConfig,
    b: &ModelConfig,
    replicas: u64,
    stream: &RngStream,
    shared_seeds: bool,
    level: f64,
) -> Result<ScaleReport> {
    let (sa, sb) = if shared_seeds {
        (stream.clone(), stream.clone())
    } else {
        (stream.child("arm", 0), stream.child("arm", 1))
    };
    let base = crossing_probability(a, replicas, &sa, level)?;
    let scaled = crossing_probability(b, replicas, &sb, level)?;
    let (z, p_value) = two_proportion_test(&base, &scaled);
    Ok(ScaleReport {
        base,
        scaled,
        z,
        p_value,
        alpha: SCALE_TEST_ALPHA,
        pass: p_value >= SCALE_TEST_ALPHA,
    })
}

/// Compares `base` with [`scaled_config`]`(base, eta)`.
pub fn scale_invariance_check(
    base: &ModelConfig,
    eta: f64,
    replicas: u64,
    stream: &RngStream,
    shared_seeds: bool,
    level: f64,
) -> Result<ScaleReport> {
    compare_crossing(base, &scaled_config(base, eta)?, replicas, stream, shared_seeds, level)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stochastic::derive_stream;

    #[test]
    fn scaling_rules() {
        let mut base = ModelConfig::standard(2, 1.0, 0.4, 0.1, 0.01, 6.0, 3);
        base.margin = 2.0;
        let c = scaled_config(&base, 4.0).unwrap();
        assert_eq!(c.lambda, 4.0);
        assert!((c.t - 0.1).abs() < 1e-15);
        assert!((c.step - 0.0025).abs() < 1e-15);
        assert_eq!(c.extents, vec![3.0, 9.0]);
        assert_eq!(c.margin, 1.0);
        assert_eq!(c.r, 0.05);
        assert!(scaled_config(&base, 0.0).is_err());
    }

    #[test]
    fn identity_on_shared_seeds() {
        let mut base = ModelConfig::standard(2, 1.0, 0.3, 0.0, 0.02, 3.0, 3);
        base.margin = 2.0;
        let r = scale_invariance_check(&base, 1.0, 30, &derive_stream(3, &[("scale", 0)]).unwrap(), true, 0.99).unwrap();
        assert_eq!(r.base, r.scaled);
        assert!(r.pass);
    }
}
