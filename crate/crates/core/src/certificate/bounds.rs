use crate::error::{ensure, Result};
use crate::models::{shell_constant, tail_series};
use crate::stochastic::RadiusDistribution;

/// `(4 d c1 c4 L0^{d+1})^{-1}`, the crossing probability below which the
/// multiscale bound starts.
pub fn seed_condition(d: usize, l0: f64, c1: f64, c4: f64) -> Result<f64> {
    ensure(d >= 1, || "dimension must be >= 1".into())?;
    for (name, v) in [("L0", l0), ("c1", c1), ("c4", c4)] {
        ensure(v > 0.0 && v.is_finite(), || format!("{name} must be > 0 (got {v})"))?;
    }
    Ok(1.0 / (4.0 * d as f64 * c1 * c4 * l0.powi(d as i32 + 1)))
}

/// `d 4^d sum_{K >= M - 3N} K^{d-1} rho([K, inf))`, the expected number of
/// far seeds whose material reaches the `N x 3N x ... x 3N` box.
pub fn boundary_tail_bound(tail: &RadiusDistribution, margin: i64, n: i64, d: usize) -> Result<f64> {
    Ok(shell_constant(d) * tail_series(tail, margin - 3 * n, d)?)
}

/// Whether a measured crossing interval certifies the seed condition.
pub fn certifies(ci_hi: f64, epsilon_max: f64) -> bool {
    ci_hi < epsilon_max
}
