//! Closed-form Gaussian quantities.

use statrs::distribution::{ContinuousCDF, Normal};
use statrs::function::erf::erfc;

use crate::error::{ensure, Result};

pub fn std_normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

/// Upper tail `1 - Phi(x)`, accurate far into the tail.
pub fn std_normal_sf(x: f64) -> f64 {
    0.5 * erfc(x / std::f64::consts::SQRT_2)
}

pub fn std_normal_quantile(p: f64) -> f64 {
    Normal::standard().inverse_cdf(p)
}

/// `P^z(tau_0 <= t)` for a one-dimensional Brownian motion started at `z >= 0`,
/// i.e. `2 (1 - Phi(z / sqrt(t)))` by the reflection principle.
pub fn hitting_probability_halfline(z: f64, t: f64) -> Result<f64> {
    ensure(z >= 0.0 && t >= 0.0, || {
        format!("hitting probability needs z >= 0 and t >= 0 (got z={z}, t={t})")
    })?;
    if t == 0.0 {
        return Ok(if z == 0.0 { 1.0 } else { 0.0 });
    }
    Ok(erfc(z / (2.0 * t).sqrt()).min(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn start_on_target() {
        assert_eq!(hitting_probability_halfline(0.0, 1.0).unwrap(), 1.0);
        assert_eq!(hitting_probability_halfline(0.0, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn unit_distance_unit_time() {
        // 2 (1 - Phi(1)) = 0.3173105078629141
        let p = hitting_probability_halfline(1.0, 1.0).unwrap();
        assert!((p - 0.317_310_507_862_914_1).abs() < 1e-5);
    }

    #[test]
    fn no_time_no_hit() {
        assert_eq!(hitting_probability_halfline(1.0, 0.0).unwrap(), 0.0);
        assert!(hitting_probability_halfline(1.0, 1e-8).unwrap() < 1e-100);
    }

    #[test]
    fn negative_inputs_rejected() {
        assert!(hitting_probability_halfline(-1.0, 1.0).is_err());
        assert!(hitting_probability_halfline(1.0, -1.0).is_err());
    }

    #[test]
    fn quantile_inverts_cdf() {
        for &p in &[0.005, 0.1, 0.5, 0.9, 0.995] {
            let back = std_normal_cdf(std_normal_quantile(p));
            assert!((back - p).abs() < 1e-9 * p.max(1e-3), "{p} -> {back}");
        }
    }
}
