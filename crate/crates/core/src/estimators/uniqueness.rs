use crate::error::{ensure, Result};
use crate::estimators::{estimate, EstimateCI};
use crate::geometry::{spanning_components, Aabb, ClipProblem};
use crate::models::{sample_occupied_set, ModelConfig, OccupiedSetSample};
use crate::real::Real;
use crate::stochastic::RngStream;

/// Clusters of the material inside `{r_in <= |x - center|_inf <= r_out}` that
/// meet both the inner and the outer boundary.
pub fn unbounded_cluster_count<F: Real>(sample: &OccupiedSetSample<F>, center: &[F], r_in: F, r_out: F) -> Result<usize> {
    ensure(r_in > F::zero() && r_out > r_in, || format!("need 0 < r_in < r_out (got {r_in}, {r_out})"))?;
    ensure(center.len() == sample.window.dim(), || "centre dimension differs from the sample".into())?;
    let outer = Aabb::cube(center, r_out);
    ensure(
        sample.window.contains(&outer.lo) && sample.window.contains(&outer.hi),
        || "sample window must contain the outer box".into(),
    )?;
    if sample.chains.is_empty() {
        return Ok(0);
    }
    let labeling = sample.labeling();
    Ok(spanning_components(&sample.chains, &labeling, &ClipProblem::annulus(center, r_in, r_out)))
}

/// Frequency of at least two annulus-spanning clusters around the centre of
/// the crossing box of `config`.
pub fn multiple_spanning_frequency(
    config: &ModelConfig,
    r_in: f64,
    r_out: f64,
    replicas: u64,
    stream: &RngStream,
    level: f64,
) -> Result<EstimateCI> {
    config.validate()?;
    let center: Vec<f64> = config.extents.iter().map(|n| 0.5 * n).collect();
    let trial = |s: &RngStream| -> Result<bool> {
        let sample = sample_occupied_set::<f64>(config, s)?;
        Ok(unbounded_cluster_count(&sample, &center, r_in, r_out)? >= 2)
    };
    estimate(&trial, replicas, stream, level)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::CapsuleChain;

    fn sample(chains: Vec<CapsuleChain<f64>>) -> OccupiedSetSample<f64> {
        OccupiedSetSample {
            config: None,
            window: Aabb::cube(&[0.0, 0.0], 10.0),
            chains,
            master_seed: 0,
            stream: String::new(),
        }
    }

    #[test]
    fn empty_sample() {
        assert_eq!(unbounded_cluster_count(&sample(vec![]), &[0.0, 0.0], 1.0, 4.0).unwrap(), 0);
    }

    #[test]
    fn radial_arms() {
        let one = vec![CapsuleChain::segment(&[0.0, 0.0], &[6.0, 0.5], 0.2, 0).unwrap()];
        assert_eq!(unbounded_cluster_count(&sample(one), &[0.0, 0.0], 1.0, 4.0).unwrap(), 1);
        let two = vec![
            CapsuleChain::segment(&[0.0, 0.3], &[6.0, 0.3], 0.2, 0).unwrap(),
            CapsuleChain::segment(&[0.0, -0.3], &[-6.0, -0.3], 0.2, 1).unwrap(),
        ];
        assert_eq!(unbounded_cluster_count(&sample(two), &[0.0, 0.0], 1.0, 4.0).unwrap(), 2);
    }

    #[test]
    fn window_must_cover_outer_box() {
        assert!(unbounded_cluster_count(&sample(vec![]), &[0.0, 0.0], 1.0, 11.0).is_err());
    }
}
