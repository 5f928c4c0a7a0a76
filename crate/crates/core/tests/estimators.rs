mod common;

use common::*;
use sausage::estimators::*;
use sausage::geometry::CapsuleChain;
use sausage::models::{sample_occupied_set, ModelConfig, OccupiedSetSample};
use sausage::stochastic::{derive_stream, RngStream};
use sausage::Result;

const LEVEL: f64 = DEFAULT_LEVEL;

fn root(tag: &str) -> RngStream {
    derive_stream(21, &[(tag, 0)]).unwrap()
}

#[test]
fn wilson_interval_invariants() {
    for (s, n) in [(0, 10), (10, 10), (3, 7), (500, 1000), (1, 400)] {
        let e = EstimateCI::wilson(s, n, LEVEL).unwrap();
        assert!(0.0 <= e.ci_lo && e.ci_lo <= e.p_hat && e.p_hat <= e.ci_hi && e.ci_hi <= 1.0);
        assert_eq!(e.p_hat, s as f64 / n as f64);
    }
    // z = 2.5758 at 0.99; Wilson bounds of 5/20 computed by hand
    let e = EstimateCI::wilson(5, 20, 0.99).unwrap();
    let z: f64 = 2.575_829_303_549;
    let (p, n) = (0.25, 20.0);
    let centre = (p + z * z / (2.0 * n)) / (1.0 + z * z / n);
    let half = z / (1.0 + z * z / n) * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt();
    assert!((e.ci_lo - (centre - half)).abs() < 1e-9 && (e.ci_hi - (centre + half)).abs() < 1e-9);
    assert!(EstimateCI::wilson(3, 0, LEVEL).is_err());
}

#[test]
fn trivial_crossing_estimates() {
    let c = ModelConfig::standard(2, 0.0, 1.0, 0.0, 0.01, 5.0, 1);
    assert_eq!(crossing_probability(&c, 50, &root("c"), LEVEL).unwrap().p_hat, 0.0);
    let c = ModelConfig::standard(2, 2.0, 0.0, 0.0, 0.01, 5.0, 1);
    assert_eq!(crossing_probability(&c, 50, &root("c"), LEVEL).unwrap().p_hat, 0.0);
}

#[test]
fn injected_chains_follow_raster_verdict() {
    let (configs, _) = raster_configs(20, 31);
    let mut c = ModelConfig::standard(2, 1.0, 1.0, 0.0, 0.01, RASTER_BOX.0, 1);
    c.extents = vec![RASTER_BOX.0, RASTER_BOX.1];
    c.tol = Some(RASTER_TOL);
    for (chains, expected) in configs {
        let trial = |_: &RngStream| -> Result<bool> { crosses(&c, &chains) };
        let e = estimate(&trial, 10, &root("inject"), LEVEL).unwrap();
        assert_eq!(e.p_hat, f64::from(u8::from(expected)));
    }
}

#[test]
fn step_response_is_bracketed() {
    let opts = BisectOptions {
        replicas: 40,
        ..BisectOptions::default()
    };
    let b = threshold_bisect(&StepFamily { threshold: 1.0 }, Axis::Time, 0.25, 4.0, &opts, &root("step")).unwrap();
    assert!(b.lo < 1.0 + 1e-12 && 1.0 <= b.hi);
    assert!(b.relative_width() <= 0.2 && !b.budget_exhausted && !b.unresolved);
    assert!(b.p_lo.ci_hi < b.target && b.target < b.p_hi.ci_lo);
    let err = threshold_bisect(&StepFamily { threshold: 0.1 }, Axis::Time, 0.25, 4.0, &opts, &root("step"));
    assert!(matches!(err, Err(sausage::Error::UnbracketedTarget { .. })));
    let err = threshold_bisect(&StepFamily { threshold: 9.0 }, Axis::Time, 0.25, 4.0, &opts, &root("step"));
    assert!(matches!(err, Err(sausage::Error::UnbracketedTarget { .. })));
}

#[test]
fn bracket_reproduces_its_estimates() {
    let fam = ConfigFamily {
        template: ModelConfig::standard(2, 1.0, 1.0, 0.0, 0.02, 4.0, 5),
        axis: Axis::Time,
    };
    let opts = BisectOptions {
        replicas: 60,
        max_iters: 6,
        ..BisectOptions::default()
    };
    let s = root("bisect");
    let b = threshold_bisect(&fam, Axis::Time, 0.02, 2.0, &opts, &s).unwrap();
    assert!(b.lo < b.hi);
    assert!(b.p_lo.ci_hi < b.target && b.target < b.p_hi.ci_lo);
    for (param, recorded) in [(b.lo, b.p_lo), (b.hi, b.p_hi)] {
        let again = crossing_probability(&fam.config_at(param), recorded.replicas, &s, LEVEL).unwrap();
        assert_eq!(again, recorded);
    }
    let b2 = threshold_bisect(&fam, Axis::Time, 0.02, 2.0, &opts, &s).unwrap();
    assert_eq!((b.lo, b.hi, b.p_lo, b.p_hi), (b2.lo, b2.hi, b2.p_lo, b2.p_hi));
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let c = ModelConfig::standard(2, 1.0, 0.3, 0.0, 0.02, 4.0, 9);
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| crossing_probability(&c, 64, &root("pool"), LEVEL).unwrap())
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn edge_probability_trivial_cases() {
    let mut p = EdgeParams {
        half_size: 1.0,
        t: 1.0,
        lambda: 0.0,
        d: 2,
        step: 0.01,
        tol: 0.3,
    };
    assert_eq!(edge_open_probability(&p, 50, &root("edge"), LEVEL).unwrap().p_hat, 0.0);
    p.lambda = 1.0;
    p.t = 0.0;
    p.tol = 0.0;
    assert_eq!(edge_open_probability(&p, 200, &root("edge"), LEVEL).unwrap().p_hat, 0.0);
}

#[test]
fn path_intersection_cases() {
    let s = root("paths");
    let step: f64 = 0.01;
    let tol = 3.0 * step.sqrt();
    assert_eq!(path_intersection_probability(0.0, 1.0, 2, step, tol, 20, &s, LEVEL).unwrap().p_hat, 1.0);
    assert!(path_intersection_probability(1.0, 1.0, 1, step, tol, 5, &s, LEVEL).is_err());
    assert!(path_intersection_probability(1.0, 1.0, 4, step, 0.0, 5, &s, LEVEL).is_err());
    assert!(path_intersection_probability(1.0, 1.0, 4, step, tol, 5, &s, LEVEL).is_ok());
    assert!(intersection_dimension_flag(5, 0.1).unwrap());
    let by_time: Vec<f64> = [1.0, 10.0, 100.0]
        .iter()
        .map(|&t| path_intersection_probability(2.0, t, 2, 0.04, 0.6, 300, &s, LEVEL).unwrap().p_hat)
        .collect();
    // time-nested paths on shared streams: the indicator itself is monotone
    assert!(by_time[0] <= by_time[1] && by_time[1] <= by_time[2], "{by_time:?}");
    assert!(by_time[2] > 0.8, "{by_time:?}");
}

fn sample_of(chains: Vec<CapsuleChain<f64>>) -> OccupiedSetSample<f64> {
    OccupiedSetSample {
        config: None,
        window: sausage::geometry::Aabb::cube(&[0.0, 0.0], 20.0),
        chains,
        master_seed: 0,
        stream: String::new(),
    }
}

#[test]
fn spanning_cluster_counts() {
    let c = [0.0, 0.0];
    assert_eq!(unbounded_cluster_count(&sample_of(vec![]), &c, 2.0, 8.0).unwrap(), 0);
    let ray = CapsuleChain::segment(&[0.0, 0.0], &[12.0, 0.0], 0.2, 0).unwrap();
    assert_eq!(unbounded_cluster_count(&sample_of(vec![ray.clone()]), &c, 2.0, 8.0).unwrap(), 1);
    let back = CapsuleChain::segment(&[0.0, 1.0], &[-12.0, 1.0], 0.2, 1).unwrap();
    let chains = vec![ray.clone(), back];
    // the two rays only meet inside the inner box
    let adj = touch_graph(&chains, 0.0, 1e-9).unwrap();
    assert_eq!(bfs_components(&adj).iter().collect::<std::collections::HashSet<_>>().len(), 2);
    assert_eq!(unbounded_cluster_count(&sample_of(chains), &c, 2.0, 8.0).unwrap(), 2);
    let short = CapsuleChain::segment(&[3.0, 3.0], &[5.0, 5.0], 0.2, 0).unwrap();
    assert_eq!(unbounded_cluster_count(&sample_of(vec![short]), &c, 2.0, 8.0).unwrap(), 0);
    assert!(unbounded_cluster_count(&sample_of(vec![ray.clone()]), &c, 8.0, 2.0).is_err());
    assert!(unbounded_cluster_count(&sample_of(vec![ray]), &c, 2.0, 30.0).is_err());
}

#[test]
fn uniqueness_frequency_runs() {
    let mut c = ModelConfig::standard(2, 1.0, 1.0, 0.0, 0.02, 16.0, 3);
    c.extents = vec![16.0, 16.0];
    let e = multiple_spanning_frequency(&c, 2.0, 8.0, 20, &root("uniq"), LEVEL).unwrap();
    assert_eq!(e.replicas, 20);
    let o = sample_occupied_set::<f64>(&c, &root("uniq").child("replica", 0)).unwrap();
    assert!(unbounded_cluster_count(&o, &[8.0, 8.0], 2.0, 8.0).is_ok());
}

#[test]
fn unit_scale_factor_is_the_identity() {
    let c = ModelConfig::standard(2, 1.0, 0.3, 0.0, 0.02, 4.0, 2);
    let r = scale_invariance_check(&c, 1.0, 100, &root("scale"), true, LEVEL).unwrap();
    assert_eq!(r.base, r.scaled);
    assert!(r.pass);
}

fn mid_annulus() -> Annulus {
    Annulus::new(vec![0.0, 0.0], 10.0, 0.5).unwrap()
}

#[test]
fn bridge_stay_cases() {
    let s = root("bridge");
    let a = [10.0, 0.0];
    let huge = Annulus::new(vec![0.0, 0.0], 10.0, 1e6).unwrap();
    assert_eq!(bridge_stay_probability(&huge, 1.0, &a, &a, 0.5, 0.01, 200, &s, LEVEL).unwrap().p_hat, 1.0);
    let e = bridge_stay_probability(&mid_annulus(), 0.25, &a, &a, 0.05, 0.01, 2000, &s, LEVEL).unwrap();
    assert!(e.ci_lo > 0.0);
    assert!(bridge_stay_probability(&mid_annulus(), 0.25, &[10.4, 0.0], &a, 0.05, 0.01, 10, &s, LEVEL).is_err());
    assert!(bridge_stay_probability(&mid_annulus(), 0.6, &a, &a, 0.05, 0.01, 10, &s, LEVEL).is_err());
}

#[test]
fn bridge_matches_rejection_oracle() {
    let (a, duration, step) = ([10.0, 0.0], 0.25, 0.01);
    let e = bridge_stay_probability(&mid_annulus(), 0.25, &a, &a, duration, step, 4000, &root("bridge"), LEVEL).unwrap();
    let (stayed, accepted) = rejection_stay(&mid_annulus(), &a, &a, duration, step, 0.03, 4000, 17);
    let q = stayed as f64 / accepted as f64;
    let sd = (e.p_hat * (1.0 - e.p_hat) / 4000.0 + q * (1.0 - q) / accepted as f64).sqrt();
    assert!(e.p_hat > 0.1 && e.p_hat < 0.9, "{}", e.p_hat);
    assert!((e.p_hat - q).abs() <= 3.0 * sd, "bridge {} vs oracle {q} (sd {sd})", e.p_hat);
}

#[test]
fn annulus_intersection_cases() {
    let s = root("ann");
    let ring = Annulus::new(vec![0.0, 0.0], 10.0, 2.0).unwrap();
    let a = [10.0, 0.0];
    let same = annulus_intersection_probability(&ring, &a, &a, 1.0, 1.0, 0.1, 0.01, 0.1, 300, &s, LEVEL).unwrap();
    // coincident starts touch at once; the estimate is the chance both stay inside
    let stay = |k: u64| {
        let r = s.child("replica", k);
        let p = sausage::stochastic::sample_brownian_path(&a, 0.9, 0.01, &mut r.child("a", 0)).unwrap();
        let q = sausage::stochastic::sample_brownian_path(&a, 0.9, 0.01, &mut r.child("b", 0)).unwrap();
        ring.contains_path(&p) && ring.contains_path(&q)
    };
    assert_eq!(same.successes, (0..300).filter(|&k| stay(k)).count() as u64);
    let b = [10.0, 2.0];
    let mut prev = 1.0;
    for tol in [0.6, 0.3, 0.1, 0.0] {
        let e = annulus_intersection_probability(&ring, &a, &b, 4.0, 4.0, 0.5, 0.01, tol, 300, &s, LEVEL).unwrap();
        assert!(e.p_hat <= prev);
        prev = e.p_hat;
    }
    assert!(annulus_intersection_probability(&ring, &a, &[0.0, 0.0], 1.0, 1.0, 0.1, 0.01, 0.1, 5, &s, LEVEL).is_err());
    let flat = Annulus::new(vec![0.0], 10.0, 2.0).unwrap();
    assert!(annulus_intersection_probability(&flat, &[10.0], &[10.0], 1.0, 1.0, 0.1, 0.01, 0.1, 5, &s, LEVEL).is_err());
}
