//! Coarse-grained bond model on `Z^d`.
//!
//! Site `z` owns the cube `B_inf(2Rz, R)`. Its selected point is the Poisson
//! point of the cube closest to the centre; an edge is open when both sites
//! are occupied and the paths of their selected points touch.

use serde::{Deserialize, Serialize};

use crate::error::{ensure, Result};
use crate::geometry::{label, Aabb, CapsuleChain};
use crate::real::dist2;
use crate::stochastic::{sample_brownian_path, sample_poisson_points, Polyline, RngStream};

/// Lattice sites `lo <= z <= hi` (componentwise).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeWindow {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl LatticeWindow {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Result<Self> {
        ensure(!lo.is_empty() && lo.len() == hi.len(), || "lattice corners must share a dimension".into())?;
        ensure(lo.iter().zip(&hi).all(|(a, b)| a <= b), || "lattice window is empty".into())?;
        Ok(LatticeWindow { lo, hi })
    }

    /// The two sites `0` and `e_1`.
    pub fn pair(d: usize) -> Self {
        let mut hi = vec![0; d];
        hi[0] = 1;
        LatticeWindow { lo: vec![0; d], hi }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    /// Sites in lexicographic order (last coordinate fastest).
    pub fn sites(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        let mut cur = self.lo.clone();
        loop {
            out.push(cur.clone());
            let mut j = self.dim();
            loop {
                if j == 0 {
                    return out;
                }
                j -= 1;
                if cur[j] < self.hi[j] {
                    cur[j] += 1;
                    break;
                }
                cur[j] = self.lo[j];
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub open: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeField {
    pub half_size: f64,
    pub sites: Vec<Vec<i64>>,
    pub counts: Vec<u64>,
    pub selected: Vec<Option<Vec<f64>>>,
    pub paths: Vec<Option<Polyline<f64>>>,
    pub edges: Vec<Edge>,
    pub tol: f64,
}

impl EdgeField {
    /// Resolves edge states from given per-site data (nearest neighbours only).
    pub fn resolve(
        half_size: f64,
        sites: Vec<Vec<i64>>,
        counts: Vec<u64>,
        selected: Vec<Option<Vec<f64>>>,
        paths: Vec<Option<Polyline<f64>>>,
        tol: f64,
    ) -> Result<Self> {
        ensure(tol >= 0.0, || format!("tol must be >= 0 (got {tol})"))?;
        let n = sites.len();
        ensure(counts.len() == n && selected.len() == n && paths.len() == n, || "per-site data lengths differ".into())?;
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let l1: i64 = sites[a].iter().zip(&sites[b]).map(|(x, y)| (x - y).abs()).sum();
                if l1 != 1 {
                    continue;
                }
                let open = match (&paths[a], &paths[b]) {
                    (Some(pa), Some(pb)) if counts[a] >= 1 && counts[b] >= 1 => {
                        let chains = [
                            CapsuleChain::new(pa.clone(), 0.0, a)?,
                            CapsuleChain::new(pb.clone(), 0.0, b)?,
                        ];
                        label(&chains, tol).len() == 1
                    }
                    _ => false,
                };
                edges.push(Edge { a, b, open });
            }
        }
        Ok(EdgeField {
            half_size,
            sites,
            counts,
            selected,
            paths,
            edges,
            tol,
        })
    }

    pub fn site_index(&self, z: &[i64]) -> Option<usize> {
        self.sites.iter().position(|s| s == z)
    }

    pub fn edge(&self, x: &[i64], y: &[i64]) -> Option<&Edge> {
        let (a, b) = (self.site_index(x)?, self.site_index(y)?);
        self.edges.iter().find(|e| (e.a, e.b) == (a.min(b), a.max(b)))
    }
}

/// Point of `cloud` closest to `centre`; ties go to the lexicographically
/// smallest coordinates.
pub fn select_closest(cloud: &[f64], dim: usize, centre: &[f64]) -> Option<Vec<f64>> {
    let mut best: Option<(&[f64], f64)> = None;
    for p in cloud.chunks_exact(dim) {
        let d = dist2(p, centre);
        let better = match best {
            None => true,
            Some((q, e)) => d < e || (d == e && p.partial_cmp(q) == Some(std::cmp::Ordering::Less)),
        };
        if better {
            best = Some((p, d));
        }
    }
    best.map(|(p, _)| p.to_vec())
}

/// Samples the site data of `window` and resolves every nearest-neighbour edge.
///
/// Site number `i` (lexicographic order) draws its cloud from
/// `site[i]/points[0]` and its selected path from `site[i]/path[0]`.
#[allow(clippy::too_many_arguments)]
pub fn coarse_grain_edges(
    half_size: f64,
    t: f64,
    lambda: f64,
    d: usize,
    window: &LatticeWindow,
    step: f64,
    tol: f64,
    stream: &RngStream,
) -> Result<EdgeField> {
    ensure(half_size > 0.0 && half_size.is_finite(), || format!("R must be > 0 (got {half_size})"))?;
    ensure(window.dim() == d, || "lattice window dimension differs from d".into())?;
    let sites = window.sites();
    let mut counts = Vec::with_capacity(sites.len());
    let mut selected = Vec::with_capacity(sites.len());
    let mut paths = Vec::with_capacity(sites.len());
    for (i, z) in sites.iter().enumerate() {
        let site = stream.child("site", i as u64);
        let centre: Vec<f64> = z.iter().map(|&c| 2.0 * half_size * c as f64).collect();
        let cube = Aabb::cube(&centre, half_size);
        let cloud = sample_poisson_points::<f64, _>(&cube, lambda, &mut site.child("points", 0))?;
        counts.push(cloud.len() as u64);
        let pick = select_closest(&cloud.points, d, &centre);
        let path = match &pick {
            Some(x) => Some(sample_brownian_path(x, t, step, &mut site.child("path", 0))?),
            None => None,
        };
        selected.push(pick);
        paths.push(path);
    }
    EdgeField::resolve(half_size, sites, counts, selected, paths, tol)
}
