//! Subcommand bodies. Each returns CSV bytes and a JSON result block.

use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use sausage::certificate::{
    boundary_tail_bound, certifies, counting_lemma_check, enumerate_counting_instances, renorm_recursion,
    renorm_recursion_exact, CountingInstance, RenormParams,
};
use sausage::estimators::{
    compare_crossing, crossing_probability, edge_open_probability, multiple_spanning_frequency,
    path_intersection_probability, scaled_config, site_occupancy, threshold_bisect, Axis, BisectOptions,
    ConfigFamily, EdgeParams, EstimateCI, StepFamily, ThresholdBracket,
};
use sausage::geometry::Aabb;
use sausage::models::{slab_projection_sample, ModelConfig};
use sausage::stochastic::{default_k_max, derive_stream, slab_intensity_sum, slab_mass, RadiusDistribution, RngStream};

use crate::config::{Arithmetic, AxisName, ExperimentConfig, Kind};
use crate::output::csv_bytes;
use crate::CliError;

pub struct Outcome {
    pub csv: Vec<u8>,
    pub results: Value,
    pub passed: bool,
    pub streams: &'static str,
}

const CELL_STREAMS: &str = "cell[i]/replica[k]";
const SHARED_STREAMS: &str = "cell[0]/replica[k] for every cell";

/// Stream of cell `i`; replica `k` runs on its child `replica[k]`.
pub fn cell_stream(seed: u64, i: u64) -> RngStream {
    derive_stream(seed, &[("cell", i)]).expect("non-empty label path")
}

pub const ESTIMATE_HEADER: [&str; 16] = [
    "experiment_id", "d", "lambda", "t", "r", "N", "Delta", "tol", "margin", "replicas", "p_hat", "ci_lo", "ci_hi",
    "level", "seed", "config_hash",
];

#[derive(Serialize)]
struct EstimateRow<'a> {
    experiment_id: &'a str,
    d: usize,
    lambda: f64,
    t: f64,
    r: f64,
    n: f64,
    delta: f64,
    tol: f64,
    margin: f64,
    replicas: u64,
    p_hat: f64,
    ci_lo: f64,
    ci_hi: f64,
    level: f64,
    seed: u64,
    config_hash: &'a str,
}

pub struct Ctx<'a> {
    pub cfg: &'a ExperimentConfig,
    pub id: &'a str,
    pub hash: &'a str,
}

impl Ctx<'_> {
    fn row(&self, c: &ModelConfig, e: &EstimateCI) -> EstimateRow<'_> {
        EstimateRow {
            experiment_id: self.id,
            d: c.d,
            lambda: c.lambda,
            t: c.t,
            r: c.r,
            n: c.extents[0],
            delta: c.step,
            tol: c.resolved_tol(),
            margin: c.margin,
            replicas: e.replicas,
            p_hat: e.p_hat,
            ci_lo: e.ci_lo,
            ci_hi: e.ci_hi,
            level: e.level,
            seed: self.cfg.seed,
            config_hash: self.hash,
        }
    }
}

fn curve_point(param: f64, e: &EstimateCI) -> Value {
    json!({ "param": param, "p_hat": e.p_hat, "ci_lo": e.ci_lo, "ci_hi": e.ci_hi, "replicas": e.replicas })
}

pub fn cross(ctx: &Ctx) -> Result<Outcome, CliError> {
    let c = ctx.cfg.model.model_config(ctx.cfg.seed, ctx.cfg.model.t)?;
    let e = crossing_probability(&c, ctx.cfg.replicas, &cell_stream(ctx.cfg.seed, 0), ctx.cfg.level)?;
    Ok(Outcome {
        csv: csv_bytes(&ESTIMATE_HEADER, &[ctx.row(&c, &e)])?,
        results: json!({ "model": c, "estimate": e, "curve_param": "t", "curve": [curve_point(c.t, &e)] }),
        passed: true,
        streams: CELL_STREAMS,
    })
}

fn or_model(list: &[f64], value: f64) -> Vec<f64> {
    if list.is_empty() {
        vec![value]
    } else {
        list.to_vec()
    }
}

pub fn sweep(ctx: &Ctx) -> Result<Outcome, CliError> {
    let m = &ctx.cfg.model;
    let s = &ctx.cfg.sweep;
    let (ls, ts, rs, ns) = (or_model(&s.lambda, m.lambda), or_model(&s.t, m.t), or_model(&s.r, m.r), or_model(&s.n, m.n));
    let t_max = ts.iter().copied().fold(m.t, f64::max);
    let mut configs = Vec::new();
    for &n in &ns {
        for &lambda in &ls {
            for &r in &rs {
                for &t in &ts {
                    let mut sec = m.clone();
                    (sec.n, sec.lambda, sec.r, sec.t) = (n, lambda, r, t);
                    if m.extents.is_some() && s.n.len() > 1 {
                        return Err(CliError::Config("sweep.n cannot be combined with model.extents".into()));
                    }
                    configs.push(sec.model_config(ctx.cfg.seed, t_max)?);
                }
            }
        }
    }
    // cells share replica streams, so monotone models give monotone estimates
    let stream = cell_stream(ctx.cfg.seed, 0);
    let mut rows = Vec::new();
    let mut cells = Vec::new();
    let param = if ts.len() > 1 { "t" } else if ls.len() > 1 { "lambda" } else if rs.len() > 1 { "r" } else { "N" };
    let mut curve = Vec::new();
    for c in &configs {
        let e = crossing_probability(c, ctx.cfg.replicas, &stream, ctx.cfg.level)?;
        let x = match param {
            "t" => c.t,
            "lambda" => c.lambda,
            "r" => c.r,
            _ => c.extents[0],
        };
        curve.push(curve_point(x, &e));
        cells.push(json!({ "model": c, "estimate": e }));
        rows.push((c.clone(), e));
    }
    let csv_rows: Vec<_> = rows.iter().map(|(c, e)| ctx.row(c, e)).collect();
    Ok(Outcome {
        csv: csv_bytes(&ESTIMATE_HEADER, &csv_rows)?,
        results: json!({ "cells": cells, "curve_param": param, "curve": curve }),
        passed: true,
        streams: SHARED_STREAMS,
    })
}

pub fn threshold(ctx: &Ctx) -> Result<Outcome, CliError> {
    let th = &ctx.cfg.threshold;
    let opts = BisectOptions {
        target: th.target,
        replicas: ctx.cfg.replicas,
        max_iters: th.max_iters,
        level: ctx.cfg.level,
        budget_factor: th.budget_factor,
    };
    let axis = match th.axis {
        AxisName::T => Axis::Time,
        AxisName::Lambda => Axis::Intensity,
    };
    let stream = cell_stream(ctx.cfg.seed, 0);
    let (bracket, template): (ThresholdBracket, Option<ModelConfig>) = if ctx.cfg.model.kind == Kind::Step {
        let fam = StepFamily {
            threshold: ctx.cfg.model.step_threshold,
        };
        (threshold_bisect(&fam, axis, th.lo, th.hi, &opts, &stream)?, None)
    } else {
        // the window stays fixed along the time axis so that replicas remain coupled
        let t_margin = if axis == Axis::Time { th.hi } else { ctx.cfg.model.t };
        let template = ctx.cfg.model.model_config(ctx.cfg.seed, t_margin)?;
        let fam = ConfigFamily {
            template: template.clone(),
            axis,
        };
        (threshold_bisect(&fam, axis, th.lo, th.hi, &opts, &stream)?, Some(template))
    };
    let base = match &template {
        Some(t) => t.clone(),
        None => {
            let mut c = ModelConfig::standard(ctx.cfg.model.d, ctx.cfg.model.lambda, ctx.cfg.model.t, 0.0, ctx.cfg.model.step, ctx.cfg.model.n, ctx.cfg.seed);
            c.tol = Some(0.0);
            c
        }
    };
    let at = |p: f64| {
        let mut c = base.clone();
        match axis {
            Axis::Time => c.t = p,
            Axis::Intensity => c.lambda = p,
        }
        c
    };
    let rows: Vec<_> = bracket.history.iter().map(|s| (at(s.param), s.estimate)).collect();
    let csv_rows: Vec<_> = rows.iter().map(|(c, e)| ctx.row(c, e)).collect();
    let curve: Vec<Value> = bracket.history.iter().map(|s| curve_point(s.param, &s.estimate)).collect();
    let passed = !bracket.budget_exhausted && !bracket.unresolved;
    Ok(Outcome {
        csv: csv_bytes(&ESTIMATE_HEADER, &csv_rows)?,
        results: json!({
            "bracket": bracket,
            "relative_width": bracket.relative_width(),
            "template": template,
            "curve_param": if axis == Axis::Time { "t" } else { "lambda" },
            "curve": curve,
        }),
        passed,
        streams: SHARED_STREAMS,
    })
}

#[derive(Serialize)]
struct EdgeRow<'a> {
    experiment_id: &'a str,
    big_r: f64,
    t: f64,
    lambda: f64,
    d: usize,
    delta: f64,
    tol: f64,
    replicas: u64,
    p_hat: f64,
    ci_lo: f64,
    ci_hi: f64,
    occupancy: f64,
    occupancy_expected: f64,
    level: f64,
    seed: u64,
    config_hash: &'a str,
}

pub fn edges(ctx: &Ctx) -> Result<Outcome, CliError> {
    let m = &ctx.cfg.model;
    let tol = ctx.cfg.edges.tol.unwrap_or(3.0 * m.step.sqrt());
    let mut rows = Vec::new();
    let mut curve = Vec::new();
    for (i, &(half, t)) in ctx.cfg.edges.cells.iter().enumerate() {
        let p = EdgeParams {
            half_size: half,
            t,
            lambda: m.lambda,
            d: m.d,
            step: m.step,
            tol,
        };
        let s = cell_stream(ctx.cfg.seed, i as u64);
        let e = edge_open_probability(&p, ctx.cfg.replicas, &s.child("edge", 0), ctx.cfg.level)?;
        let occ = site_occupancy(&p, ctx.cfg.replicas, &s.child("occupancy", 0), ctx.cfg.level)?;
        curve.push(curve_point(half, &e));
        rows.push(EdgeRow {
            experiment_id: ctx.id,
            big_r: half,
            t,
            lambda: m.lambda,
            d: m.d,
            delta: m.step,
            tol,
            replicas: e.replicas,
            p_hat: e.p_hat,
            ci_lo: e.ci_lo,
            ci_hi: e.ci_hi,
            occupancy: occ.p_hat,
            occupancy_expected: 1.0 - (-m.lambda * (2.0 * half).powi(m.d as i32)).exp(),
            level: e.level,
            seed: ctx.cfg.seed,
            config_hash: ctx.hash,
        });
    }
    let header = [
        "experiment_id", "R", "t", "lambda", "d", "Delta", "tol", "replicas", "p_hat", "ci_lo", "ci_hi", "occupancy",
        "occupancy_expected", "level", "seed", "config_hash",
    ];
    Ok(Outcome {
        csv: csv_bytes(&header, &rows)?,
        results: json!({ "curve_param": "R", "curve": curve }),
        passed: true,
        streams: "cell[i]/edge[0]/replica[k], cell[i]/occupancy[0]/replica[k]",
    })
}

#[derive(Serialize)]
struct MonoRow<'a> {
    experiment_id: &'a str,
    separation: f64,
    t: f64,
    d: usize,
    delta: f64,
    tol: f64,
    replicas: u64,
    p_hat: f64,
    ci_lo: f64,
    ci_hi: f64,
    level: f64,
    seed: u64,
    config_hash: &'a str,
}

pub fn mono(ctx: &Ctx) -> Result<Outcome, CliError> {
    let m = &ctx.cfg.model;
    let tol = ctx.cfg.mono.tol.unwrap_or(3.0 * m.step.sqrt());
    let stream = cell_stream(ctx.cfg.seed, 0);
    let mut rows = Vec::new();
    let mut curve = Vec::new();
    let mut monotone = true;
    for &t in &ctx.cfg.mono.times {
        let mut prev: Option<EstimateCI> = None;
        for &sep in &ctx.cfg.mono.separations {
            let e = path_intersection_probability(sep, t, m.d, m.step, tol, ctx.cfg.replicas, &stream, ctx.cfg.level)?;
            if let Some(p) = prev {
                monotone &= e.ci_lo <= p.ci_hi;
            }
            prev = Some(e);
            curve.push(curve_point(sep, &e));
            rows.push(MonoRow {
                experiment_id: ctx.id,
                separation: sep,
                t,
                d: m.d,
                delta: m.step,
                tol,
                replicas: e.replicas,
                p_hat: e.p_hat,
                ci_lo: e.ci_lo,
                ci_hi: e.ci_hi,
                level: e.level,
                seed: ctx.cfg.seed,
                config_hash: ctx.hash,
            });
        }
    }
    let header = [
        "experiment_id", "separation", "t", "d", "Delta", "tol", "replicas", "p_hat", "ci_lo", "ci_hi", "level", "seed",
        "config_hash",
    ];
    Ok(Outcome {
        csv: csv_bytes(&header, &rows)?,
        results: json!({ "non_increasing_within_ci": monotone, "curve_param": "separation", "curve": curve }),
        passed: monotone,
        streams: SHARED_STREAMS,
    })
}

pub fn scale(ctx: &Ctx) -> Result<Outcome, CliError> {
    let base = ctx.cfg.model.model_config(ctx.cfg.seed, ctx.cfg.model.t)?;
    let scaled = scaled_config(&base, ctx.cfg.scale.eta)?;
    let r = compare_crossing(&base, &scaled, ctx.cfg.replicas, &cell_stream(ctx.cfg.seed, 0), ctx.cfg.scale.shared_seeds, ctx.cfg.level)?;
    let rows = [ctx.row(&base, &r.base), ctx.row(&scaled, &r.scaled)];
    Ok(Outcome {
        csv: csv_bytes(&ESTIMATE_HEADER, &rows)?,
        results: json!({ "eta": ctx.cfg.scale.eta, "report": r, "scaled_model": scaled }),
        passed: r.pass,
        streams: if ctx.cfg.scale.shared_seeds { "cell[0]/replica[k]" } else { "cell[0]/arm[j]/replica[k]" },
    })
}

#[derive(Serialize)]
struct UniqueRow<'a> {
    #[serde(flatten)]
    estimate: EstimateRow<'a>,
    r_in: f64,
    r_out: f64,
}

pub fn unique(ctx: &Ctx) -> Result<Outcome, CliError> {
    let c = ctx.cfg.model.model_config(ctx.cfg.seed, ctx.cfg.model.t)?;
    let u = &ctx.cfg.unique;
    let stream = cell_stream(ctx.cfg.seed, 0);
    let mut rows = Vec::new();
    let mut curve = Vec::new();
    for &ratio in &u.ratios {
        let r_out = u.r_in * ratio;
        let e = multiple_spanning_frequency(&c, u.r_in, r_out, ctx.cfg.replicas, &stream, ctx.cfg.level)?;
        curve.push(curve_point(ratio, &e));
        rows.push((e, r_out));
    }
    let csv_rows: Vec<_> = rows
        .iter()
        .map(|(e, r_out)| UniqueRow {
            estimate: ctx.row(&c, e),
            r_in: u.r_in,
            r_out: *r_out,
        })
        .collect();
    let mut header = ESTIMATE_HEADER.to_vec();
    header.extend(["r_in", "r_out"]);
    Ok(Outcome {
        csv: csv_bytes(&header, &csv_rows)?,
        results: json!({ "model": c, "curve_param": "ratio", "curve": curve }),
        passed: true,
        streams: SHARED_STREAMS,
    })
}

#[derive(Serialize)]
struct SlabRow<'a> {
    experiment_id: &'a str,
    k: usize,
    t: f64,
    slab_mass: f64,
    seed: u64,
    config_hash: &'a str,
}

pub fn slab(ctx: &Ctx) -> Result<Outcome, CliError> {
    let m = &ctx.cfg.model;
    let sl = &ctx.cfg.slab;
    if m.d < 2 {
        return Err(CliError::Config("slab projection needs model.d >= 2".into()));
    }
    if !(sl.length > 0.0) || sl.cells == 0 {
        return Err(CliError::Config("slab.length and slab.cells must be positive".into()));
    }
    let k_max = sl.k_max.unwrap_or_else(|| default_k_max(m.t));
    let (sum, lower) = slab_intensity_sum(m.t, k_max)?;
    let masses: Vec<f64> = (1..=k_max).map(|k| slab_mass(k, m.t)).collect::<Result<_, _>>()?;
    let window = Aabb::crossing_box(&vec![sl.length; m.d - 1])?;
    let stream = cell_stream(ctx.cfg.seed, 0);
    let mut counts = Vec::with_capacity(ctx.cfg.replicas as usize);
    let mut cell_counts = Vec::new();
    let h = sl.length / sl.cells as f64;
    for k in 0..ctx.cfg.replicas {
        let s = slab_projection_sample(m.lambda, m.t, m.d, &window, k_max, &stream.child("replica", k))?;
        counts.push(s.len() as f64);
        let mut cells = vec![0u64; sl.cells.pow(m.d as u32 - 1)];
        for p in s.iter() {
            let idx = p.iter().fold(0usize, |acc, &x| acc * sl.cells + ((x / h) as usize).min(sl.cells - 1));
            cells[idx] += 1;
        }
        cell_counts.extend(cells);
    }
    let n = counts.len() as f64;
    let mean = counts.iter().sum::<f64>() / n;
    let var = counts.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
    let volume = window.volume();
    let expected = m.lambda * sum * volume;
    let z = if var > 0.0 { (mean - expected) / (var / n).sqrt() } else { 0.0 };
    let gof = poisson_gof(&cell_counts, m.lambda * sum * h.powi(m.d as i32 - 1));
    let passed = sum >= lower && z.abs() <= 3.0 && gof.map_or(true, |p| p > 0.01);
    let rows: Vec<_> = masses
        .iter()
        .enumerate()
        .map(|(i, &p)| SlabRow {
            experiment_id: ctx.id,
            k: i + 1,
            t: m.t,
            slab_mass: p,
            seed: ctx.cfg.seed,
            config_hash: ctx.hash,
        })
        .collect();
    Ok(Outcome {
        csv: csv_bytes(&["experiment_id", "k", "t", "slab_mass", "seed", "config_hash"], &rows)?,
        results: json!({
            "k_max": k_max,
            "intensity_sum": sum,
            "lower_bound": lower,
            "empirical_intensity": mean / volume,
            "expected_intensity": m.lambda * sum,
            "z": z,
            "poisson_gof_p": gof,
        }),
        passed,
        streams: "cell[0]/replica[k]/slab[j]",
    })
}

/// Chi-square p-value of cell counts against Poisson(mu), merging the upper tail.
fn poisson_gof(counts: &[u64], mu: f64) -> Option<f64> {
    use statrs::distribution::{ChiSquared, ContinuousCDF, Discrete, Poisson};
    if counts.is_empty() || mu <= 0.0 {
        return None;
    }
    let law = Poisson::new(mu).ok()?;
    let n = counts.len() as f64;
    // bins 0..=top with expected count >= 5 each; the last bin holds the tail
    let mut top = 0u64;
    while law.pmf(top + 1) * n >= 5.0 && top < 200 {
        top += 1;
    }
    if top == 0 {
        return None;
    }
    let mut obs = vec![0.0; top as usize + 1];
    for &c in counts {
        obs[c.min(top) as usize] += 1.0;
    }
    let mut exp: Vec<f64> = (0..top).map(|j| n * law.pmf(j)).collect();
    exp.push(n - exp.iter().sum::<f64>());
    let stat: f64 = obs.iter().zip(&exp).map(|(o, e)| (o - e).powi(2) / e).sum();
    // one degree of freedom lost to the total and one to the fitted mean
    let dof = top as f64 - 1.0;
    if dof < 1.0 {
        return None;
    }
    Some(ChiSquared::new(dof).ok()?.sf(stat))
}

#[derive(Serialize)]
struct CertRow<'a> {
    experiment_id: &'a str,
    n: usize,
    scale: &'a str,
    a_n: f64,
    log10_a_n: f64,
    within: bool,
    seed: u64,
    config_hash: &'a str,
}

pub fn certify(ctx: &Ctx) -> Result<Outcome, CliError> {
    let c = &ctx.cfg.certify;
    if c.d == 0 || c.big_r < 2 {
        return Err(CliError::Config("certify needs d >= 1 and big_r >= 2".into()));
    }
    let l0 = match c.l0 {
        Some(l) => l,
        None => RenormParams::minimal_l0(c.d, c.big_r).to_u64()
            .ok_or_else(|| CliError::Config("structural L0 does not fit in 64 bits; give certify.l0".into()))?,
    };
    let a0 = match &c.a0 {
        Some(s) => s
            .parse::<num_rational::BigRational>()
            .map_err(|e| CliError::Config(format!("certify.a0 `{s}`: {e}")))?,
        None => num_rational::BigRational::new(1.into(), l0.into()),
    };
    let mut p = RenormParams::with_defaults(c.d, c.big_r, l0, c.n, c.lambda, c.tail_c, c.tail_r0, a0);
    p.c1 = c.c1.unwrap_or(p.c1);
    p.c2 = c.c2.unwrap_or(p.c2);
    p.c3 = c.c3.unwrap_or(p.c3);
    p.c4 = c.c4.unwrap_or(p.c4);
    p.depth = c.depth;
    let report = match c.arithmetic {
        Arithmetic::Exact => renorm_recursion_exact(&p)?,
        Arithmetic::F64 => renorm_recursion::<f64>(&p)?,
    };
    let tail = match c.margin {
        Some(m) => Some(boundary_tail_bound(
            &RadiusDistribution::ExponentialTail {
                c: c.tail_c,
                r0: c.tail_r0.max(f64::MIN_POSITIVE),
            },
            m,
            c.n as i64,
            c.d,
        )?),
        None => None,
    };
    let certified = c.ci_hi.map(|h| certifies(h, report.epsilon_max));
    let rows: Vec<_> = report
        .bounds
        .iter()
        .enumerate()
        .map(|(n, &a)| {
            let within = n < report.bounds.len() - 1 || report.passed();
            CertRow {
                experiment_id: ctx.id,
                n,
                scale: &report.scales[n],
                a_n: a,
                log10_a_n: report.log10_bounds[n],
                within,
                seed: ctx.cfg.seed,
                config_hash: ctx.hash,
            }
        })
        .collect();
    let passed = report.passed() && certified.unwrap_or(true);
    Ok(Outcome {
        csv: csv_bytes(&["experiment_id", "n", "L_n", "a_n", "log10_a_n", "within", "seed", "config_hash"], &rows)?,
        results: json!({
            "report": report,
            "boundary_tail_bound": tail,
            "boundary_constant": sausage::models::shell_constant(c.d),
            "certified": certified,
            "conditional_on_constants": true,
        }),
        passed,
        streams: "none (deterministic)",
    })
}

pub fn counting(ctx: &Ctx) -> Result<Outcome, CliError> {
    let c = &ctx.cfg.counting;
    match (&c.instance, c.enumerate) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            let inst: CountingInstance =
                serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            let rep = counting_lemma_check(&inst);
            #[derive(Serialize)]
            struct Row<'a> {
                experiment_id: &'a str,
                size: usize,
                marked: usize,
                k: usize,
                preconditions_ok: bool,
                conclusion_ok: bool,
                config_hash: &'a str,
            }
            let row = Row {
                experiment_id: ctx.id,
                size: inst.size,
                marked: inst.marked.len(),
                k: inst.k,
                preconditions_ok: rep.preconditions_ok,
                conclusion_ok: rep.conclusion_ok,
                config_hash: ctx.hash,
            };
            let header = ["experiment_id", "size", "marked", "k", "preconditions_ok", "conclusion_ok", "config_hash"];
            Ok(Outcome {
                csv: csv_bytes(&header, &[row])?,
                results: json!({ "instance": inst, "report": rep }),
                passed: !rep.preconditions_ok || rep.conclusion_ok,
                streams: "none (deterministic)",
            })
        }
        (None, Some(max)) => {
            if max > 7 {
                return Err(CliError::Config("counting.enumerate supports sizes up to 7".into()));
            }
            let s = enumerate_counting_instances(max);
            #[derive(Serialize)]
            struct Row<'a> {
                experiment_id: &'a str,
                size: usize,
                largest_marked: usize,
                config_hash: &'a str,
            }
            let rows: Vec<_> = (1..=max)
                .map(|size| Row {
                    experiment_id: ctx.id,
                    size,
                    largest_marked: s.largest_marked[size],
                    config_hash: ctx.hash,
                })
                .collect();
            Ok(Outcome {
                csv: csv_bytes(&["experiment_id", "size", "largest_marked", "config_hash"], &rows)?,
                results: json!({ "enumeration": s }),
                passed: s.counterexamples == 0,
                streams: "none (deterministic)",
            })
        }
        _ => Err(CliError::Config("give exactly one of counting.instance and counting.enumerate".into())),
    }
}
