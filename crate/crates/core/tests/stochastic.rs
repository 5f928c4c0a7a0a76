mod common;

use common::{chi_square_p, mean_var, within_sigma};
use proptest::prelude::*;
use rand::RngCore;
use sausage::geometry::Aabb;
use sausage::stochastic::*;

fn stream(labels: &[(&str, u64)]) -> RngStream {
    derive_stream(20_240, labels).unwrap()
}

#[test]
fn sibling_streams_share_no_prefix() {
    let mut seen = std::collections::HashSet::new();
    for k in 0..32 {
        let mut s = stream(&[("replica", k)]);
        let first: Vec<u64> = (0..64).map(|_| s.next_u64()).collect();
        assert!(seen.insert(first), "stream {k} repeats an earlier prefix");
    }
}

#[test]
fn poisson_count_moments() {
    let window = Aabb::new(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap();
    let counts: Vec<f64> = (0..10_000)
        .map(|k| sample_poisson_points::<f64, _>(&window, 5.0, &mut stream(&[("poisson", k)])).unwrap().len() as f64)
        .collect();
    let (m, v) = mean_var(&counts);
    assert!(within_sigma(m, 5.0, (5.0f64 / 10_000.0).sqrt(), 3.0), "mean {m}");
    assert!((v - 5.0).abs() < 0.35, "variance {v}");
    // goodness of fit against Poisson(5), tail bins pooled
    let pmf = |k: u64| statrs::distribution::Discrete::pmf(&statrs::distribution::Poisson::new(5.0).unwrap(), k);
    let mut observed = vec![0.0; 12];
    for &c in &counts {
        observed[(c as usize).min(11)] += 1.0;
    }
    let mut expected: Vec<f64> = (0..11).map(|k| 10_000.0 * pmf(k)).collect();
    expected.push(10_000.0 - expected.iter().sum::<f64>());
    assert!(chi_square_p(&observed, &expected, 0) > 0.01);
}

#[test]
fn poisson_points_inside_window_and_zero_intensity() {
    let window = Aabb::new(vec![-1.0, 2.0, 0.0], vec![1.0, 3.0, 0.5]).unwrap();
    let pts = sample_poisson_points::<f64, _>(&window, 40.0, &mut stream(&[("p", 0)])).unwrap();
    assert!(pts.len() > 10);
    assert!(pts.iter().all(|p| window.contains(p)));
    let again = sample_poisson_points::<f64, _>(&window, 40.0, &mut stream(&[("p", 0)])).unwrap();
    assert_eq!(pts, again);
    assert!(sample_poisson_points::<f64, _>(&window, 0.0, &mut stream(&[("p", 0)])).unwrap().is_empty());
    assert!(sample_poisson_points::<f64, _>(&window, -1.0, &mut stream(&[("p", 0)])).is_err());
}

#[test]
fn brownian_variance_at_unit_time() {
    let ends: Vec<f64> = (0..10_000)
        .map(|k| sample_brownian_path(&[0.0f64], 1.0, 0.01, &mut stream(&[("bm", k)])).unwrap().end()[0])
        .collect();
    let (m, v) = mean_var(&ends);
    assert!(m.abs() < 3.0 * 0.01);
    assert!((v - 1.0).abs() < 0.05, "variance {v}");
    let p = sample_brownian_path(&[0.0f64, 0.0], 1.0, 0.01, &mut stream(&[("bm", 0)])).unwrap();
    assert_eq!(p.len(), 101);
}

#[test]
fn increments_are_gaussian() {
    let path = sample_brownian_path(&[0.0f64], 100.0, 0.01, &mut stream(&[("gof", 0)])).unwrap();
    let incs: Vec<f64> = path.coords.windows(2).map(|w| (w[1] - w[0]) / 0.1).collect();
    assert_eq!(incs.len(), 10_000);
    let bins = 20;
    let mut observed = vec![0.0; bins];
    for z in incs {
        let u = std_normal_cdf(z);
        observed[((u * bins as f64) as usize).min(bins - 1)] += 1.0;
    }
    let expected = vec![10_000.0 / bins as f64; bins];
    assert!(chi_square_p(&observed, &expected, 0) > 0.01);
}

#[test]
fn bridge_moments() {
    // a = a_bar = 0, delta = 1: W_{1/2} is centred with variance 1/4
    let mids: Vec<f64> = (0..10_000)
        .map(|k| {
            let w = sample_brownian_bridge(&[0.0f64], &[0.0], 1.0, 0.01, &mut stream(&[("bridge", k)])).unwrap();
            w.position(50)[0]
        })
        .collect();
    let (m, v) = mean_var(&mids);
    assert!(within_sigma(m, 0.0, 0.5 / 100.0, 3.0), "mean {m}");
    assert!((v - 0.25).abs() < 0.05 * 0.25, "variance {v}");
}

proptest! {
    #[test]
    fn bridge_is_pinned(
        a in prop::collection::vec(-5.0f64..5.0, 2),
        e in prop::collection::vec(-5.0f64..5.0, 2),
        duration in 0.05f64..3.0,
        frac in 0.01f64..1.0,
        seed in 0u64..1000,
    ) {
        let w = sample_brownian_bridge(&a, &e, duration, duration * frac, &mut stream(&[("pin", seed)])).unwrap();
        prop_assert_eq!(w.start(), &a[..]);
        prop_assert_eq!(w.end(), &e[..]);
        prop_assert_eq!(w.len(), grid_len(duration, duration * frac));
    }

    #[test]
    fn path_length_rule(horizon in 0.0f64..3.0, step in 0.01f64..0.5) {
        let p = sample_brownian_path(&[0.0f64], horizon, step, &mut stream(&[("len", 0)])).unwrap();
        let ratio = horizon / step;
        let expected = if (ratio - ratio.round()).abs() < 1e-9 * ratio.max(1.0) { ratio.round() } else { ratio.ceil() };
        prop_assert_eq!(p.len(), 1 + expected as usize);
    }
}

#[test]
fn hitting_probability_values() {
    assert_eq!(hitting_probability_halfline(0.0, 1.0).unwrap(), 1.0);
    assert!((hitting_probability_halfline(1.0, 1.0).unwrap() - 0.31731).abs() < 1e-5);
    assert!(hitting_probability_halfline(1.0, 1e-6).unwrap() < 1e-100);
    assert!(hitting_probability_halfline(-0.1, 1.0).is_err());
}

#[test]
fn reflection_principle_with_refinement() {
    // one-sided sup of a 1-d path over [0, 1] against 2 (1 - Phi(1))
    let exact = 2.0 * std_normal_sf(1.0);
    let freq = |step: f64, replicas: u64| {
        let hits = (0..replicas)
            .filter(|&k| {
                let p = sample_brownian_path(&[0.0f64], 1.0, step, &mut stream(&[("refl", k)])).unwrap();
                p.coords.iter().any(|&x| x >= 1.0)
            })
            .count();
        hits as f64 / replicas as f64
    };
    let coarse = freq(0.01, 10_000);
    let fine = freq(0.0025, 10_000);
    let finest = freq(1e-4, 10_000);
    assert!((exact - fine).abs() < (exact - coarse).abs(), "{coarse} -> {fine} (exact {exact})");
    let sd = (exact * (1.0 - exact) / 10_000.0).sqrt();
    assert!(within_sigma(finest, exact, sd, 3.0), "{finest} vs {exact}");
}

#[test]
fn sup_radius_tail() {
    let bound = 2.0 * (1.0 / (2.0 * std::f64::consts::PI)).sqrt() * (-2.0f64).exp();
    let n = 10_000;
    let hits = (0..n)
        .filter(|&k| {
            let p = sample_brownian_path(&[0.0f64], 1.0, 0.01, &mut stream(&[("sup", k)])).unwrap();
            sup_radius(&p) >= 2.0
        })
        .count() as f64
        / n as f64;
    let sd = (bound * (1.0 - bound) / n as f64).sqrt();
    assert!(hits <= bound + 3.0 * sd, "{hits} > {bound}");
    let line = Polyline::from_positions(2, vec![0.0, 0.0, 3.0, 4.0]).unwrap();
    assert_eq!(sup_radius(&line), 5.0);
    assert_eq!(sup_radius(&Polyline::point(&[1.0, 1.0])), 0.0);
}

#[test]
fn slab_sum_bounds() {
    let t = 2.0 * std::f64::consts::PI;
    let (value, lower) = slab_intensity_sum(t, 30).unwrap();
    assert_eq!(lower, 1.0);
    assert!(value >= 1.0);
    // the slab masses add up to E[sup_{s <= t} B_s] = sqrt(2t / pi)
    assert!((value - 2.0).abs() < 1e-6, "{value}");
    for t in [1.0, 4.0, 25.0] {
        let (v, l) = slab_intensity_sum(t, default_k_max(t)).unwrap();
        assert!(v >= l, "t={t}: {v} < {l}");
    }
    let (tiny, _) = slab_intensity_sum(1e-8, 10).unwrap();
    assert!(tiny < 1e-3);
    let masses: Vec<f64> = (1..=12).map(|k| slab_mass(k, 4.0).unwrap()).collect();
    assert!(masses.windows(2).all(|w| w[0] >= w[1]));
}

#[test]
fn slab_sum_matches_discretized_suprema() {
    let t = 4.0;
    let n = 4000;
    let sups: Vec<f64> = (0..n)
        .map(|k| {
            let p = sample_brownian_path(&[0.0f64], t, 1e-3, &mut stream(&[("esup", k)])).unwrap();
            p.coords.iter().copied().fold(0.0, f64::max)
        })
        .collect();
    let (m, v) = mean_var(&sups);
    let (value, _) = slab_intensity_sum(t, default_k_max(t)).unwrap();
    // discrete maxima fall short by about 0.58 sqrt(step)
    let bias = 0.5826 * 1e-3f64.sqrt();
    assert!(within_sigma(m + bias, value, (v / n as f64).sqrt(), 3.0), "{m} vs {value}");
}

#[test]
fn moment_bound_properties() {
    let eps = 0.1f64;
    let small = radius_moment_bound(1e-4, 2, eps).unwrap();
    assert!((small - eps * eps).abs() < 1e-3, "{small}");
    let mut prev = 0.0;
    for t in [0.01, 0.1, 1.0, 4.0] {
        let v = radius_moment_bound(t, 2, eps).unwrap();
        assert!(v >= eps * eps && v >= prev);
        prev = v;
    }
    // Monte Carlo of E[max(sup |B|, eps)^2] in d = 2 at t = 1
    let n = 4000;
    let moments: Vec<f64> = (0..n)
        .map(|k| {
            let p = sample_brownian_path(&[0.0f64, 0.0], 1.0, 0.01, &mut stream(&[("mom", k)])).unwrap();
            sup_radius(&p).max(eps).powi(2)
        })
        .collect();
    let (m, _) = mean_var(&moments);
    assert!(radius_moment_bound(1.0, 2, eps).unwrap() >= m);
}

#[test]
fn safe_intensity_scales_inversely() {
    assert_eq!(subcritical_safe_intensity(2.0, 1.0).unwrap(), 0.5);
    assert_eq!(subcritical_safe_intensity(f64::INFINITY, 1.0).unwrap(), 0.0);
    assert_eq!(subcritical_safe_intensity(8.0, 3.0).unwrap() * 2.0, subcritical_safe_intensity(4.0, 3.0).unwrap());
    assert!(subcritical_safe_intensity(0.0, 1.0).is_err());
    assert!(subcritical_safe_intensity(1.0, -1.0).is_err());
}

#[test]
fn radius_laws() {
    let mut s = stream(&[("rad", 0)]);
    let det = RadiusDistribution::Deterministic { r: 1.0 };
    let emp = RadiusDistribution::Empirical { samples: vec![1.0, 1.0, 1.0] };
    for _ in 0..20 {
        assert_eq!(det.sample(&mut s).unwrap(), emp.sample(&mut s).unwrap());
    }
    let exp = RadiusDistribution::ExponentialTail { c: 2.0, r0: 0.5 };
    let draws: Vec<f64> = (0..5000).map(|_| exp.sample(&mut s).unwrap()).collect();
    let above = draws.iter().filter(|&&r| r >= 1.0).count() as f64 / 5000.0;
    assert!(above <= exp.tail(1.0) + 3.0 * (exp.tail(1.0) / 5000.0).sqrt());
    assert!(RadiusDistribution::Deterministic { r: -1.0 }.validate().is_err());
}
