use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::{label, Aabb, CapsuleChain, ClusterLabeling};
use crate::models::{ModelConfig, ModelKind};
use crate::real::Real;
use crate::stochastic::{sample_brownian_path, sample_poisson_points, Polyline, RadiusDistribution, RngStream};

/// One realization of an occupied set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OccupiedSetSample<F> {
    pub config: Option<ModelConfig>,
    pub window: Aabb<F>,
    pub chains: Vec<CapsuleChain<F>>,
    pub master_seed: u64,
    /// Label path of the stream the sample was drawn from.
    pub stream: String,
}

impl<F: Real> OccupiedSetSample<F> {
    /// Clusters with the configured tolerance (0 without a config).
    pub fn labeling(&self) -> ClusterLabeling<F> {
        let tol = self.config.as_ref().map_or(0.0, ModelConfig::resolved_tol);
        label(&self.chains, F::of(tol))
    }
}

/// Samples the occupied set described by `config`.
///
/// Seeds come from the substream `points`; the path of seed `i` from
/// `path[i]`. Paths of different horizons drawn from one stream are nested,
/// and a higher intensity only appends seeds, so crossings are monotone in
/// `t`, `r` and `lambda` on a shared stream.
pub fn sample_occupied_set<F: Real>(config: &ModelConfig, stream: &RngStream) -> Result<OccupiedSetSample<F>> {
    config.validate()?;
    let window = config.window::<F>()?;
    match &config.model {
        ModelKind::Boolean { radius } => {
            let mut s = sample_boolean(&window, config.lambda, radius, stream)?;
            s.config = Some(config.clone());
            return Ok(s);
        }
        ModelKind::Sausage => {}
    }
    let seeds = sample_poisson_points::<F, _>(&window, config.lambda, &mut stream.child("points", 0))?;
    let radius = F::of(config.r);
    let chains = seeds
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let path = sample_brownian_path(x, config.t, config.step, &mut stream.child("path", i as u64))?;
            CapsuleChain::new(path, radius, i)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OccupiedSetSample {
        config: Some(config.clone()),
        window,
        chains,
        master_seed: stream.master_seed(),
        stream: stream.path_string(),
    })
}

/// Boolean model: balls at a Poisson cloud in `window` with radii from `rho`.
///
/// `SupOfBrownian` radii are the sup-radius of the path the sausage model
/// would attach to the same seed (`path[i]`) plus the offset, so each ball
/// contains that sausage. Other laws draw from `radius[i]`.
pub fn sample_boolean<F: Real>(
    window: &Aabb<F>,
    lambda: f64,
    rho: &RadiusDistribution,
    stream: &RngStream,
) -> Result<OccupiedSetSample<F>> {
    rho.validate()?;
    let seeds = sample_poisson_points::<F, _>(window, lambda, &mut stream.child("points", 0))?;
    let chains = seeds
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let r = match rho {
                RadiusDistribution::SupOfBrownian { .. } => rho.sample(&mut stream.child("path", i as u64))?,
                _ => rho.sample(&mut stream.child("radius", i as u64))?,
            };
            CapsuleChain::new(Polyline::point(x), F::of(r), i)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OccupiedSetSample {
        config: None,
        window: window.clone(),
        chains,
        master_seed: stream.master_seed(),
        stream: stream.path_string(),
    })
}
