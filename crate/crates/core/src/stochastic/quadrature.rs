//! Globally adaptive Gauss–Kronrod (7/15) quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

pub const DEFAULT_ABS_TOL: f64 = 1e-8;
pub const DEFAULT_MAX_SUBDIVISIONS: usize = 1_000_000;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Clone, Copy, Debug)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub subdivisions: usize,
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<G: Fn(f64) -> f64>(g: &G, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = g(c);
    let mut k = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let s = g(c - x) + g(c + x);
        k += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    (k * h, ((k - gauss) * h).abs())
}

/// Integrates `f` over the finite interval `[a, b]` to absolute tolerance `abs_tol`.
pub fn integrate<G: Fn(f64) -> f64>(
    f: G,
    a: f64,
    b: f64,
    abs_tol: f64,
    max_subdivisions: usize,
) -> Result<Quadrature> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::NumericFailure(format!(
            "integration bounds must be finite, got [{a}, {b}]"
        )));
    }
    if a == b {
        return Ok(Quadrature {
            value: 0.0,
            error: 0.0,
            subdivisions: 0,
        });
    }
    let (value, error) = kronrod(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Panel { a, b, value, error });
    let mut total = value;
    let mut total_err = error;
    let mut subdivisions = 1;
    while total_err > abs_tol {
        if subdivisions >= max_subdivisions {
            return Err(Error::NumericFailure(format!(
                "quadrature did not reach {abs_tol:e} within {max_subdivisions} subdivisions (error {total_err:e})"
            )));
        }
        let worst = heap.pop().expect("heap holds at least one panel");
        let mid = 0.5 * (worst.a + worst.b);
        let (v1, e1) = kronrod(&f, worst.a, mid);
        let (v2, e2) = kronrod(&f, mid, worst.b);
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        heap.push(Panel {
            a: worst.a,
            b: mid,
            value: v1,
            error: e1,
        });
        heap.push(Panel {
            a: mid,
            b: worst.b,
            value: v2,
            error: e2,
        });
        subdivisions += 1;
        if !total.is_finite() {
            return Err(Error::NumericFailure("non-finite integrand".into()));
        }
        // Running sums drift; resum occasionally.
        if subdivisions % 4096 == 0 {
            total = heap.iter().map(|p| p.value).sum();
            total_err = heap.iter().map(|p| p.error).sum();
        }
    }
    let value = heap.iter().map(|p| p.value).sum();
    let error = heap.iter().map(|p| p.error).sum();
    Ok(Quadrature {
        value,
        error,
        subdivisions,
    })
}

/// Integrates `f` over `[a, inf)` through the map `x = a + scale (1 - u) / u`.
pub fn integrate_to_infinity<G: Fn(f64) -> f64>(
    f: G,
    a: f64,
    scale: f64,
    abs_tol: f64,
    max_subdivisions: usize,
) -> Result<Quadrature> {
    let g = |u: f64| {
        if u <= 0.0 {
            return 0.0;
        }
        let x = a + scale * (1.0 - u) / u;
        let v = f(x) * scale / (u * u);
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    integrate(g, 0.0, 1.0, abs_tol, max_subdivisions)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let q = integrate(|x| x * x * x - 2.0 * x, 0.0, 3.0, 1e-12, 100).unwrap();
        assert!((q.value - (81.0 / 4.0 - 9.0)).abs() < 1e-12);
    }

    #[test]
    fn gaussian_half_line() {
        let q = integrate_to_infinity(|x| (-x * x / 2.0).exp(), 0.0, 1.0, 1e-10, 10_000).unwrap();
        let exact = (std::f64::consts::PI / 2.0).sqrt();
        assert!((q.value - exact).abs() < 1e-9, "{}", q.value);
    }

    #[test]
    fn integrable_singularity() {
        // int_0^1 x^{-1/2} dx = 2
        let q = integrate(|x| 1.0 / x.sqrt(), 0.0, 1.0, 1e-8, 100_000).unwrap();
        assert!((q.value - 2.0).abs() < 1e-7);
    }

    #[test]
    fn reports_budget_exhaustion() {
        let err = integrate(|x| (1.0 / x).sin() / x, 1e-9, 1.0, 1e-14, 50).unwrap_err();
        assert!(matches!(err, Error::NumericFailure(_)));
    }
}
