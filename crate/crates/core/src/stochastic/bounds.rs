//! Analytic intensities and moment bounds.

use std::f64::consts::PI;

use crate::error::{ensure, Result};
use crate::stochastic::quadrature::{integrate, integrate_to_infinity, DEFAULT_ABS_TOL, DEFAULT_MAX_SUBDIVISIONS};
use crate::stochastic::special::hitting_probability_halfline;

/// Thinning probability of slab `k`: `p^k_t = int_{k-1}^{k} P^z(tau_0 <= t) dz`.
pub fn slab_mass(k: usize, t: f64) -> Result<f64> {
    ensure(k >= 1, || "slab index starts at 1".into())?;
    ensure(t >= 0.0 && t.is_finite(), || format!("time must be >= 0 (got {t})"))?;
    if t == 0.0 {
        return Ok(0.0);
    }
    let a = (k - 1) as f64;
    let q = integrate(
        |z| hitting_probability_halfline(z, t).unwrap_or(0.0),
        a,
        a + 1.0,
        DEFAULT_ABS_TOL,
        DEFAULT_MAX_SUBDIVISIONS,
    )?;
    Ok(q.value)
}

/// Sum of slab masses up to `k_max`, together with `sqrt(2t/pi) - 1`.
pub fn slab_intensity_sum(t: f64, k_max: usize) -> Result<(f64, f64)> {
    ensure(t > 0.0 && t.is_finite(), || format!("time must be > 0 (got {t})"))?;
    ensure(k_max >= 1, || "k_max must be >= 1".into())?;
    // slabs beyond 40 standard deviations contribute nothing representable
    let cutoff = (40.0 * t.sqrt()).ceil() as usize + 1;
    let mut value = 0.0;
    for k in 1..=k_max.min(cutoff) {
        value += slab_mass(k, t)?;
    }
    Ok((value, (2.0 * t / PI).sqrt() - 1.0))
}

/// Default slab count `ceil(10 sqrt t) + 10`.
pub fn default_k_max(t: f64) -> usize {
    (10.0 * t.sqrt()).ceil() as usize + 10
}

/// `eps^d + 4d sqrt(t d / 2 pi) int_{eps^d}^inf y^{-1/d} exp(-y^{2/d} / (2 t d)) dy`.
pub fn radius_moment_bound(t: f64, d: usize, eps: f64) -> Result<f64> {
    ensure(t > 0.0 && t.is_finite(), || format!("time must be > 0 (got {t})"))?;
    ensure(d >= 1, || "dimension must be >= 1".into())?;
    ensure(eps > 0.0 && eps.is_finite(), || format!("cut must be > 0 (got {eps})"))?;
    let df = d as f64;
    let base = eps.powi(d as i32);
    let var = 2.0 * t * df;
    let f = |y: f64| y.powf(-1.0 / df) * (-y.powf(2.0 / df) / var).exp();
    let scale = base.max(var.powf(df / 2.0));
    let q = integrate_to_infinity(f, base, scale, DEFAULT_ABS_TOL, DEFAULT_MAX_SUBDIVISIONS)?;
    Ok(base + 4.0 * df * (t * df / (2.0 * PI)).sqrt() * q.value)
}

/// `C / moment`, the largest intensity certified subcritical given the
/// (unpublished) constant `C`.
pub fn subcritical_safe_intensity(moment: f64, c_const: f64) -> Result<f64> {
    ensure(moment > 0.0 && !moment.is_nan(), || format!("moment must be > 0 (got {moment})"))?;
    ensure(c_const > 0.0 && c_const.is_finite(), || format!("constant must be > 0 (got {c_const})"))?;
    Ok(c_const / moment)
}
