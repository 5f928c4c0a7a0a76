//! Window margins from the boundary tail series.

use crate::error::{ensure, invalid, Result};
use crate::stochastic::RadiusDistribution;

/// Terms beyond this many are taken as evidence of a divergent series.
const MAX_SERIES_TERMS: u64 = 100_000_000;

/// Shell-count constant `d 4^d` bounding `(2(K+1))^d - (2K)^d <= d 4^d K^{d-1}`.
pub fn shell_constant(d: usize) -> f64 {
    d as f64 * 4f64.powi(d as i32)
}

/// `sum_{K >= k_start} K^{d-1} tail(K)` (without the shell constant).
///
/// Summation stops once the summand has passed its peak and drops below
/// `1e-16` of the running sum (or vanishes).
pub fn tail_series(tail: &RadiusDistribution, k_start: i64, d: usize) -> Result<f64> {
    tail.validate()?;
    ensure(d >= 1, || "dimension must be >= 1".into())?;
    if !tail.has_finite_moment(d) {
        return Err(invalid("radius law has no finite d-th moment"));
    }
    let power = (d - 1) as i32;
    let mut k = k_start.max(0) as u64;
    let mut sum = 0.0f64;
    let mut prev = f64::INFINITY;
    let bound = tail.support();
    for _ in 0..MAX_SERIES_TERMS {
        let kf = k as f64;
        if bound.is_some_and(|b| kf > b) {
            return Ok(sum);
        }
        let mass = tail.tail(kf);
        let term = kf.powi(power) * mass;
        sum += term;
        if mass == 0.0 || (term <= prev && term < 1e-16 * sum) {
            return Ok(sum);
        }
        prev = term;
        k += 1;
    }
    Err(invalid("tail series does not converge (no finite d-th moment?)"))
}

/// Smallest integer `M` with `d 4^d sum_{K >= M - far} K^{d-1} tail(K) <= delta_err`,
/// where `far` is the largest side of the box (`3N` for `N x 3N x ... x 3N`).
///
/// Bounded radii give `ceil(support) + far` directly.
pub fn build_margin(extents: &[f64], tail: &RadiusDistribution, delta_err: f64, d: usize) -> Result<f64> {
    ensure(delta_err > 0.0 && delta_err < 1.0, || format!("delta_err must lie in (0, 1) (got {delta_err})"))?;
    ensure(extents.len() == d && d >= 1, || "box extents must match the dimension".into())?;
    tail.validate()?;
    let far = extents.iter().copied().fold(0.0, f64::max).ceil();
    if let Some(b) = tail.support() {
        return Ok(b.ceil() + far);
    }
    let cst = shell_constant(d);
    let ok = |k: i64| -> Result<bool> { Ok(cst * tail_series(tail, k, d)? <= delta_err) };
    // exponential search for a passing offset, then bisection
    let mut hi = 1i64;
    while !ok(hi)? {
        hi *= 2;
        if hi > 1 << 40 {
            return Err(invalid("no finite margin meets the requested error"));
        }
    }
    let mut lo = 0i64;
    if ok(lo)? {
        return Ok(far);
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(far + hi as f64)
}

/// Brownian-model margin (per side of the crossing box) from the reach law.
pub fn window_margin(extents: &[f64], tail: &RadiusDistribution, delta_err: f64, d: usize) -> Result<f64> {
    let far = extents.iter().copied().fold(0.0, f64::max).ceil();
    Ok(build_margin(extents, tail, delta_err, d)? - far)
}
