use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::certificate::scalar::{CertScalar, ExactFraction};
use crate::certificate::seed_condition;
use crate::error::{ensure, invalid, Result};

pub const DEFAULT_DEPTH: usize = 20;

/// Inputs of the multiscale bound `a_{n+1} = a_n^2 R^{4(d-1)} + 4 c1^2 c3 R^{4(d-1)(n+1)} lambda (3 L_{n+1} N)^d e^{-c2 L_{n+1} N / 6}`
/// on scales `L_{n+1} = R^{n+1} L_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct RenormParams {
    pub d: usize,
    pub r: u64,
    pub l0: u64,
    pub n: u64,
    pub lambda: f64,
    /// Radius tail `rho([x, inf)) <= exp(-tail_c x)` for `x >= tail_r0`.
    pub tail_c: f64,
    pub tail_r0: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
    pub a0: BigRational,
    pub depth: usize,
}

impl RenormParams {
    /// Heuristic constants `c1 = c4 = 3^d`, `c2 = tail_c`, `c3 = 1`.
    pub fn with_defaults(d: usize, r: u64, l0: u64, n: u64, lambda: f64, tail_c: f64, tail_r0: f64, a0: BigRational) -> Self {
        let box_count = 3f64.powi(d as i32);
        RenormParams {
            d,
            r,
            l0,
            n,
            lambda,
            tail_c,
            tail_r0,
            c1: box_count,
            c2: tail_c,
            c3: 1.0,
            c4: box_count,
            a0,
            depth: DEFAULT_DEPTH,
        }
    }

    /// `2 R^{4(d-1)+1}`, the smallest admissible base scale.
    pub fn minimal_l0(d: usize, r: u64) -> BigUint {
        BigUint::from(2u32) * BigUint::from(r).pow(4 * (d as u32 - 1) + 1)
    }

    pub fn validate(&self) -> Result<()> {
        ensure(self.d >= 1, || "dimension must be >= 1".into())?;
        ensure(self.r > 1, || format!("R must be > 1 (got {})", self.r))?;
        ensure(self.l0 > 1, || format!("L0 must be > 1 (got {})", self.l0))?;
        ensure(self.n >= 1, || "N must be >= 1".into())?;
        for (name, v) in [("lambda", self.lambda), ("c1", self.c1), ("c2", self.c2), ("c4", self.c4), ("tail C", self.tail_c)] {
            ensure(v > 0.0 && v.is_finite(), || format!("{name} must be > 0 (got {v})"))?;
        }
        ensure(self.c3 >= 0.0 && self.c3.is_finite(), || format!("c3 must be >= 0 (got {})", self.c3))?;
        ensure(self.tail_r0 >= 0.0 && self.tail_r0.is_finite(), || "tail R0 must be >= 0".into())?;
        ensure(
            self.a0 >= BigRational::zero() && self.a0 <= BigRational::one(),
            || format!("a0 must lie in [0, 1] (got {})", self.a0),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail { n: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub d: usize,
    pub r: u64,
    pub l0: u64,
    pub n: u64,
    pub lambda: f64,
    pub tail_c: f64,
    pub tail_r0: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
    pub a0: String,
    pub depth: usize,
    /// `exact` or `f64`.
    pub arithmetic: String,
    /// Decimal `L_0, L_1, ...`.
    pub scales: Vec<String>,
    /// `a_0, a_1, ...` rounded to `f64` (zero on underflow).
    pub bounds: Vec<f64>,
    pub log10_bounds: Vec<f64>,
    pub verdict: Verdict,
    /// `L0 >= 2 R^{4(d-1)+1}`.
    pub structural_ok: bool,
    /// Every radius fed to the tail bound is at least `R0`.
    pub tail_regime_ok: bool,
    /// First depth whose scale is not representable; the verdict covers the prefix.
    pub truncated_at: Option<usize>,
    pub epsilon_max: f64,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn rational(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| invalid(format!("{x} is not a finite number")))
}

fn correction<S: CertScalar>(p: &RenormParams, l_next: &BigUint, step: usize) -> Result<Option<S>> {
    if p.c3 == 0.0 {
        return Ok(S::from_uint(&BigUint::zero()));
    }
    let d = p.d as u32;
    let r_pow = BigUint::from(p.r).pow(4 * (d - 1) * step as u32);
    if S::is_exact() {
        let coef = rational(4.0 * p.c1 * p.c1)? * rational(p.c3)? * rational(p.lambda)?;
        let poly = r_pow * (BigUint::from(3u32) * l_next * BigUint::from(p.n)).pow(d);
        let x = rational(p.c2)? * BigRational::from_integer((l_next * BigUint::from(p.n)).into())
            / BigRational::from_integer(6.into());
        let (Some(coef), Some(poly), Some(x)) = (S::from_rational(&coef), S::from_uint(&poly), S::from_rational(&x)) else {
            return Ok(None);
        };
        return Ok(Some(coef.mul(&poly).mul(&S::exp_neg_upper(&x))));
    }
    let ln = |u: &BigUint| {
        let bits = u.bits();
        let shift = bits.saturating_sub(64);
        (u >> shift).to_f64().unwrap_or(f64::INFINITY).ln() + shift as f64 * std::f64::consts::LN_2
    };
    let l = l_next.to_f64().unwrap_or(f64::INFINITY);
    let log_term = (4.0 * p.c1 * p.c1 * p.c3 * p.lambda).ln() + ln(&r_pow) + p.d as f64 * (3.0 * p.n as f64).ln()
        + p.d as f64 * ln(l_next)
        - p.c2 * l * p.n as f64 / 6.0;
    Ok(S::from_rational(&rational(log_term.exp())?))
}

/// Iterates the multiscale bound from `a0` and checks `a_n <= 1 / L_n` for
/// `n = 0..=depth`, stopping at the first failure.
pub fn renorm_recursion<S: CertScalar>(p: &RenormParams) -> Result<CertificateReport> {
    p.validate()?;
    let d = p.d as u32;
    let growth = BigUint::from(p.r).pow(4 * (d - 1));
    let growth_s = S::from_uint(&growth).ok_or_else(|| invalid("R^{4(d-1)} is not representable"))?;
    let mut scales = vec![BigUint::from(p.l0)];
    let mut a = S::from_rational(&p.a0).ok_or_else(|| invalid("a0 is not representable"))?;
    let mut bounds = Vec::new();
    let mut verdict = Verdict::Pass;
    let mut truncated_at = None;
    for n in 0..=p.depth {
        let l = &scales[n];
        if S::from_uint(l).is_none() {
            truncated_at = Some(n);
            break;
        }
        bounds.push(a.clone());
        if !a.le_recip(l) {
            verdict = Verdict::Fail { n };
            break;
        }
        if n == p.depth {
            break;
        }
        let l_next = BigUint::from(p.r).pow(n as u32 + 1) * l;
        let Some(extra) = correction::<S>(p, &l_next, n + 1)? else {
            truncated_at = Some(n + 1);
            break;
        };
        a = a.mul(&a).mul(&growth_s).add(&extra);
        scales.push(l_next);
    }
    scales.truncate(bounds.len());
    let l1 = BigUint::from(p.r) * BigUint::from(p.l0);
    let tail_regime_ok = l1.to_f64().unwrap_or(f64::INFINITY) * p.n as f64 / 6.0 >= p.tail_r0;
    Ok(CertificateReport {
        d: p.d,
        r: p.r,
        l0: p.l0,
        n: p.n,
        lambda: p.lambda,
        tail_c: p.tail_c,
        tail_r0: p.tail_r0,
        c1: p.c1,
        c2: p.c2,
        c3: p.c3,
        c4: p.c4,
        a0: p.a0.to_string(),
        depth: p.depth,
        arithmetic: if S::is_exact() { "exact" } else { "f64" }.into(),
        scales: scales.iter().map(|l| l.to_string()).collect(),
        log10_bounds: bounds.iter().map(|b| b.log2() * std::f64::consts::LOG10_2).collect(),
        bounds: bounds.iter().map(|b| b.to_f64()).collect(),
        verdict,
        structural_ok: BigUint::from(p.l0) >= RenormParams::minimal_l0(p.d, p.r),
        tail_regime_ok,
        truncated_at,
        epsilon_max: seed_condition(p.d, p.l0 as f64, p.c1, p.c4)?,
    })
}

/// [`renorm_recursion`] in exact fractions.
pub fn renorm_recursion_exact(p: &RenormParams) -> Result<CertificateReport> {
    renorm_recursion::<ExactFraction>(p)
}
