//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sausage::geometry::{Aabb, CapsuleChain, ClusterLabeling};
use sausage::stochastic::Polyline;
use statrs::distribution::{ChiSquared, ContinuousCDF};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Minimum of a convex function on `[a, b]` by golden-section search.
pub fn golden_min<G: Fn(f64) -> f64>(f: G, mut a: f64, mut b: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..80 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    f(a).min(f(b)).min(fc).min(fd)
}

pub fn lerp(p: &[f64], q: &[f64], s: f64) -> Vec<f64> {
    p.iter().zip(q).map(|(a, b)| a + s * (b - a)).collect()
}

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn point_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Projection-formula distance from `x` to segment `[p, q]`.
pub fn point_segment(x: &[f64], p: &[f64], q: &[f64]) -> f64 {
    let dq: Vec<f64> = q.iter().zip(p).map(|(a, b)| a - b).collect();
    let len2: f64 = dq.iter().map(|v| v * v).sum();
    let s = if len2 == 0.0 {
        0.0
    } else {
        (x.iter().zip(p).zip(&dq).map(|((a, b), c)| (a - b) * c).sum::<f64>() / len2).clamp(0.0, 1.0)
    };
    point_dist(x, &lerp(p, q, s))
}

/// Segment-segment distance: the distance from `P(s)` to the other segment is
/// convex in `s`.
pub fn segment_oracle(p1: &[f64], q1: &[f64], p2: &[f64], q2: &[f64]) -> f64 {
    golden_min(|s| point_segment(&lerp(p1, q1, s), p2, q2), 0.0, 1.0)
}

/// Segment-box distance by golden search along the segment.
pub fn segment_box_oracle(p: &[f64], q: &[f64], b: &Aabb<f64>) -> f64 {
    golden_min(|s| b.distance_to_point(&lerp(p, q, s)), 0.0, 1.0)
}

pub fn chain_segments(c: &CapsuleChain<f64>) -> Vec<(Vec<f64>, Vec<f64>)> {
    let path = &c.path;
    if path.len() == 1 {
        return vec![(path.position(0).to_vec(), path.position(0).to_vec())];
    }
    (0..path.len() - 1)
        .map(|i| (path.position(i).to_vec(), path.position(i + 1).to_vec()))
        .collect()
}

fn bbox(c: &CapsuleChain<f64>) -> (Vec<f64>, Vec<f64>) {
    let d = c.path.dim;
    let mut lo = vec![f64::INFINITY; d];
    let mut hi = vec![f64::NEG_INFINITY; d];
    for p in c.path.positions() {
        for j in 0..d {
            lo[j] = lo[j].min(p[j]);
            hi[j] = hi[j].max(p[j]);
        }
    }
    (lo, hi)
}

/// Smallest distance between the two centre lines; exact up to
/// `radius sum + 1`, a lower bound beyond.
pub fn chain_gap(a: &CapsuleChain<f64>, b: &CapsuleChain<f64>) -> f64 {
    let (la, ha) = bbox(a);
    let (lb, hb) = bbox(b);
    let box_gap = la
        .iter()
        .zip(&ha)
        .zip(lb.iter().zip(&hb))
        .map(|((l1, h1), (l2, h2))| (l2 - h1).max(l1 - h2).max(0.0))
        .map(|g| g * g)
        .sum::<f64>()
        .sqrt();
    if box_gap > a.radius + b.radius + 1.0 {
        return box_gap;
    }
    let sa = chain_segments(a);
    let sb = chain_segments(b);
    let mut best = f64::INFINITY;
    for (p1, q1) in &sa {
        for (p2, q2) in &sb {
            best = best.min(segment_oracle(p1, q1, p2, q2));
        }
    }
    best
}

/// Touch graph by brute force; `None` when some pair sits within `guard` of
/// the contact threshold (ambiguous under floating point).
pub fn touch_graph(chains: &[CapsuleChain<f64>], tol: f64, guard: f64) -> Option<Vec<Vec<usize>>> {
    let n = chains.len();
    let mut adj = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            let gap = chain_gap(&chains[i], &chains[j]);
            let reach = chains[i].radius + chains[j].radius + tol;
            if (gap - reach).abs() < guard {
                return None;
            }
            if gap <= reach {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    Some(adj)
}

/// Connected components by breadth-first search; `comp[i]` is the smallest
/// member of the component of `i`.
pub fn bfs_components(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut comp = vec![usize::MAX; n];
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if comp[v] == usize::MAX {
                    comp[v] = s;
                    queue.push_back(v);
                }
            }
        }
    }
    comp
}

pub fn same_partition(labeling: &ClusterLabeling<f64>, comp: &[usize]) -> bool {
    let n = comp.len();
    if labeling.cluster_of.len() != n {
        return false;
    }
    (0..n).all(|i| (0..n).all(|j| (labeling.cluster_of[i] == labeling.cluster_of[j]) == (comp[i] == comp[j])))
}

/// Random 2-d or 3-d chains: short random walks around `[0, extent]^d`.
pub fn random_chains(rng: &mut ChaCha8Rng, d: usize, count: usize, extent: f64, max_steps: usize) -> Vec<CapsuleChain<f64>> {
    (0..count)
        .map(|id| {
            let steps = rng.random_range(0..=max_steps);
            let mut coords: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..extent + 1.0)).collect();
            for s in 0..steps {
                for j in 0..d {
                    let prev = coords[s * d + j];
                    coords.push(prev + rng.random_range(-0.6..0.6));
                }
            }
            let radius = if rng.random_bool(0.3) { 0.0 } else { rng.random_range(0.0..0.3) };
            CapsuleChain::new(Polyline::from_positions(d, coords).unwrap(), radius, id).unwrap()
        })
        .collect()
}

/// Raster verdicts on `[0, n1] x [0, n2]` at pitch `h`: `Some(v)` when the
/// inner raster (cells inside the material, 4-connected) and the outer raster
/// (cells meeting the material, 8-connected) agree.
pub fn raster_crossing(chains: &[CapsuleChain<f64>], tol: f64, n1: f64, n2: f64, h: f64) -> Option<bool> {
    let nx = (n1 / h).round() as usize;
    let ny = (n2 / h).round() as usize;
    let half_diag = h * std::f64::consts::SQRT_2 / 2.0;
    let segs: Vec<(Vec<f64>, Vec<f64>, f64)> = chains
        .iter()
        .flat_map(|c| {
            let a = c.radius + tol / 2.0;
            chain_segments(c).into_iter().map(move |(p, q)| (p, q, a))
        })
        .collect();
    let mut slack = vec![f64::INFINITY; nx * ny];
    for ix in 0..nx {
        for iy in 0..ny {
            let c = [(ix as f64 + 0.5) * h, (iy as f64 + 0.5) * h];
            slack[ix * ny + iy] = segs
                .iter()
                .map(|(p, q, a)| point_segment(&c, p, q) - a)
                .fold(f64::INFINITY, f64::min);
        }
    }
    let flood = |on: &dyn Fn(f64) -> bool, diagonal: bool| -> bool {
        let mut seen = vec![false; nx * ny];
        let mut queue = VecDeque::new();
        for iy in 0..ny {
            if on(slack[iy]) {
                seen[iy] = true;
                queue.push_back((0usize, iy));
            }
        }
        while let Some((ix, iy)) = queue.pop_front() {
            if ix == nx - 1 {
                return true;
            }
            for dx in -1i64..=1 {
                for dy in -1i64..=1 {
                    if (dx == 0 && dy == 0) || (!diagonal && dx != 0 && dy != 0) {
                        continue;
                    }
                    let (jx, jy) = (ix as i64 + dx, iy as i64 + dy);
                    if jx < 0 || jy < 0 || jx >= nx as i64 || jy >= ny as i64 {
                        continue;
                    }
                    let k = jx as usize * ny + jy as usize;
                    if !seen[k] && on(slack[k]) {
                        seen[k] = true;
                        queue.push_back((jx as usize, jy as usize));
                    }
                }
            }
        }
        false
    };
    let inner = flood(&|s| s <= -half_diag, false);
    let outer = flood(&|s| s <= half_diag, true);
    (inner == outer).then_some(inner)
}

/// Upper-tail p-value of Pearson's statistic for observed vs expected counts.
pub fn chi_square_p(observed: &[f64], expected: &[f64], fitted: usize) -> f64 {
    let stat: f64 = observed.iter().zip(expected).map(|(o, e)| (o - e) * (o - e) / e).sum();
    let dof = (observed.len() - 1 - fitted) as f64;
    1.0 - ChiSquared::new(dof).unwrap().cdf(stat)
}

/// `|x - mean| <= k * sd`.
pub fn within_sigma(x: f64, mean: f64, sd: f64, k: f64) -> bool {
    (x - mean).abs() <= k * sd
}

pub fn mean_var(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    let v = xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1.0);
    (m, v)
}

/// Box sides and contact tolerance of the raster comparison.
pub const RASTER_BOX: (f64, f64) = (3.0, 9.0);
pub const RASTER_TOL: f64 = 0.4;

/// Random 2-d configurations with a determinate raster verdict at pitch
/// `RASTER_TOL / 4`, and the number of indeterminate draws skipped.
pub fn raster_configs(count: usize, seed: u64) -> (Vec<(Vec<CapsuleChain<f64>>, bool)>, usize) {
    let mut r = rng(seed);
    let mut out = Vec::new();
    let mut skipped = 0;
    while out.len() < count {
        let n = r.random_range(5..=50);
        let chains: Vec<CapsuleChain<f64>> = random_chains(&mut r, 2, n, RASTER_BOX.1, 10)
            .into_iter()
            .map(|mut c| {
                // squeeze the first axis into the short side
                for p in c.path.coords.chunks_exact_mut(2) {
                    p[0] = p[0] * (RASTER_BOX.0 + 2.0) / (RASTER_BOX.1 + 2.0) - 1.0 + 2.0 / (RASTER_BOX.1 + 2.0);
                }
                c
            })
            .collect();
        match raster_crossing(&chains, RASTER_TOL, RASTER_BOX.0, RASTER_BOX.1, RASTER_TOL / 4.0) {
            Some(v) => out.push((chains, v)),
            None => skipped += 1,
        }
    }
    (out, skipped)
}

/// Random configurations of at most 50 chains whose touch graph is
/// unambiguous, paired with their breadth-first components.
pub fn bfs_configs(count: usize, seed: u64) -> Vec<(Vec<CapsuleChain<f64>>, f64, Vec<usize>)> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let d = if r.random_bool(0.5) { 2 } else { 3 };
        let n = r.random_range(0..=50);
        let extent = if d == 2 { 6.0 } else { 4.0 };
        let chains = random_chains(&mut r, d, n, extent, 8);
        let tol = if r.random_bool(0.3) { 0.0 } else { r.random_range(0.0..0.3) };
        if let Some(adj) = touch_graph(&chains, tol, 1e-7) {
            out.push((chains, tol, bfs_components(&adj)));
        }
    }
    out
}

/// Asymptotic p-value of the two-sample Kolmogorov–Smirnov statistic.
pub fn ks_two_sample_p(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (n, m) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0, 0, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    let en = (n * m / (n + m)).sqrt();
    let lam = (en + 0.12 + 0.11 / en) * d;
    let mut p = 0.0;
    for k in 1..=100 {
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        p += sign * 2.0 * (-2.0 * (k * k) as f64 * lam * lam).exp();
    }
    p.clamp(0.0, 1.0)
}

/// Stay probability of the pinned bridge by rejection: free paths from `a`
/// whose endpoint lands within `radius` of `a_bar`. Returns
/// `(stayed, accepted)`.
#[allow(clippy::too_many_arguments)]
pub fn rejection_stay(
    annulus: &sausage::estimators::Annulus,
    a: &[f64],
    a_bar: &[f64],
    duration: f64,
    step: f64,
    radius: f64,
    accepted_target: u64,
    seed: u64,
) -> (u64, u64) {
    let mut r = rng(seed);
    let (mut stayed, mut accepted) = (0u64, 0u64);
    while accepted < accepted_target {
        let p = sausage::stochastic::sample_brownian_path(a, duration, step, &mut r).unwrap();
        if point_dist(p.end(), a_bar) > radius {
            continue;
        }
        accepted += 1;
        // the free end point is replaced by the pinned one
        let inside = p.positions().take(p.len() - 1).all(|x| annulus.contains(x)) && annulus.contains(a_bar);
        stayed += u64::from(inside);
    }
    (stayed, accepted)
}

pub fn ratio(n: u64, d: u64) -> num_rational::BigRational {
    num_rational::BigRational::new(n.into(), d.into())
}

pub fn minimal_l0(d: usize, r: u64) -> u64 {
    use num_traits::ToPrimitive;
    sausage::certificate::RenormParams::minimal_l0(d, r).to_u64().unwrap()
}

/// Renormalization inputs scattered around the structural base scale, depth 5.
pub fn random_renorm_params(r: &mut ChaCha8Rng) -> sausage::certificate::RenormParams {
    let d = r.random_range(2..=3);
    let big_r = r.random_range(2..=5u64);
    let m = minimal_l0(d, big_r);
    let l0 = r.random_range(m / 4..=m * 2).max(2);
    let mut p = sausage::certificate::RenormParams::with_defaults(
        d,
        big_r,
        l0,
        r.random_range(1..=5),
        r.random_range(0.1..4.0),
        r.random_range(0.1..3.0),
        r.random_range(0.0..3.0),
        ratio(r.random_range(1..=10), l0 * r.random_range(1..=20)),
    );
    p.c3 = if r.random_bool(0.3) { 0.0 } else { r.random_range(0.0..2.0) };
    p.depth = 5;
    p
}

