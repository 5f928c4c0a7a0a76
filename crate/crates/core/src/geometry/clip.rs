//! Connectivity of occupied material clipped to a region.
//!
//! The region is a finite union of closed boxes. An atom is one segment
//! capsule (radius `r + tol / 2`) intersected with one region box; atoms are
//! convex, so two atoms are connected exactly when they intersect.

use crate::geometry::segment::{closest_params, point_segment_distance, segment_box_distance, segment_distance};
use crate::geometry::cluster::segment_near_box;
use crate::geometry::grid::{default_cell_size, BLOCK_SEGMENTS};
use crate::geometry::{Aabb, CapsuleChain, ClusterLabeling, SpatialIndex, UnionFind};
use crate::real::Real;

const MAX_PROJECTION_ROUNDS: usize = 2000;

/// Whether `cap(p1 q1, a1) ∩ cap(p2 q2, a2) ∩ region` is non-empty.
///
/// Cheap certificates are tried first; otherwise cyclic projections onto the
/// three convex sets decide, up to a relative slack of about `1e-9`.
pub fn capsules_meet_in_box<F: Real>(
    (p1, q1, a1): (&[F], &[F], F),
    (p2, q2, a2): (&[F], &[F], F),
    region: &Aabb<F>,
) -> bool {
    let dim = p1.len();
    let total = a1 + a2;
    let (s, u) = closest_params(p1, q1, p2, q2);
    let frac = if total > F::zero() { a1 / total } else { F::zero() };
    let mut stack = [F::zero(); 8];
    let mut heap = Vec::new();
    let w: &mut [F] = if dim <= stack.len() {
        &mut stack[..dim]
    } else {
        heap.resize(dim, F::zero());
        &mut heap
    };
    let mut gap = F::zero();
    for j in 0..dim {
        let x1 = p1[j] + s * (q1[j] - p1[j]);
        let x2 = p2[j] + u * (q2[j] - p2[j]);
        gap += (x2 - x1) * (x2 - x1);
        w[j] = x1 + frac * (x2 - x1);
    }
    if gap.sqrt() > total && segment_distance(p1, q1, p2, q2) > total {
        return false;
    }
    if gap.sqrt() <= total && region.contains(w) {
        return true;
    }
    if segment_box_distance(p1, q1, region) > a1 || segment_box_distance(p2, q2, region) > a2 {
        return false;
    }
    region.clamp_into(w);
    if point_segment_distance(w, p1, q1) <= a1 && point_segment_distance(w, p2, q2) <= a2 {
        return true;
    }
    let mut scale = F::one() + total;
    for j in 0..dim {
        scale = scale.max(region.hi[j].abs()).max(region.lo[j].abs());
    }
    let slack = F::of(1e-9).max(F::epsilon() * F::of(64.0)) * scale;
    let mut x = w.to_vec();
    let mut prev = x.clone();
    for _ in 0..MAX_PROJECTION_ROUNDS {
        project_onto_capsule(&mut x, p1, q1, a1);
        project_onto_capsule(&mut x, p2, q2, a2);
        region.clamp_into(&mut x);
        let v1 = point_segment_distance(&x, p1, q1) - a1;
        let v2 = point_segment_distance(&x, p2, q2) - a2;
        if v1.max(v2) <= slack {
            return true;
        }
        let moved = x.iter().zip(&prev).fold(F::zero(), |m, (&a, &b)| m.max((a - b).abs()));
        if moved <= slack * F::of(1e-3) {
            return false;
        }
        prev.copy_from_slice(&x);
    }
    false
}

fn project_onto_capsule<F: Real>(x: &mut [F], p: &[F], q: &[F], a: F) {
    let s = crate::geometry::segment::closest_param_point(p, q, x);
    let mut d2 = F::zero();
    let dim = p.len();
    let mut c = vec![F::zero(); dim];
    for j in 0..dim {
        c[j] = p[j] + s * (q[j] - p[j]);
        d2 += (x[j] - c[j]) * (x[j] - c[j]);
    }
    let d = d2.sqrt();
    if d > a {
        let k = a / d;
        for j in 0..dim {
            x[j] = c[j] + k * (x[j] - c[j]);
        }
    }
}

/// A region (union of boxes) with two families of target sets.
#[derive(Clone, Debug)]
pub struct ClipProblem<F> {
    pub region: Vec<Aabb<F>>,
    pub start: Vec<Aabb<F>>,
    pub end: Vec<Aabb<F>>,
}

impl<F: Real> ClipProblem<F> {
    /// The box itself, with targets its two faces orthogonal to axis 0.
    pub fn crossing(b: &Aabb<F>) -> Self {
        ClipProblem {
            region: vec![b.clone()],
            start: vec![b.face(0, false)],
            end: vec![b.face(0, true)],
        }
    }

    /// `{r_in <= |x - center|_inf <= r_out}` as `2d` boxes; targets are the
    /// inner and outer boundaries.
    pub fn annulus(center: &[F], r_in: F, r_out: F) -> Self {
        let d = center.len();
        let outer = Aabb::cube(center, r_out);
        let inner = Aabb::cube(center, r_in);
        let mut region = Vec::with_capacity(2 * d);
        let mut start = Vec::with_capacity(2 * d);
        let mut end = Vec::with_capacity(2 * d);
        for j in 0..d {
            for upper in [false, true] {
                let mut b = outer.clone();
                if upper {
                    b.lo[j] = center[j] + r_in;
                } else {
                    b.hi[j] = center[j] - r_in;
                }
                region.push(b);
                start.push(inner.face(j, upper));
                end.push(outer.face(j, upper));
            }
        }
        ClipProblem { region, start, end }
    }
}

struct Atom {
    chain: usize,
    seg: usize,
    part: usize,
}

/// Number of components of the clipped material that meet both a `start`
/// target and an `end` target.
pub fn spanning_components<F: Real>(
    chains: &[CapsuleChain<F>],
    labeling: &ClusterLabeling<F>,
    problem: &ClipProblem<F>,
) -> usize {
    let half = labeling.tol * F::of(0.5);
    let reach = |c: usize| chains[c].radius + half;
    let touches = |c: usize, s: usize, target: &Aabb<F>| -> bool {
        let (p, q) = chains[c].seg(s);
        let a = reach(c);
        segment_near_box(p, q, a, &target.lo, &target.hi) && segment_box_distance(p, q, target) <= a
    };
    // chain-level prefilter: a spanning clipped component lies in one cluster
    let mut candidate = vec![false; labeling.len()];
    for (k, cl) in labeling.clusters.iter().enumerate() {
        let near = |targets: &[Aabb<F>]| targets.iter().any(|t| cl.bbox.overlaps(t));
        if !near(&problem.start) || !near(&problem.end) {
            continue;
        }
        let reaches = |targets: &[Aabb<F>]| {
            cl.members.iter().any(|&c| {
                let bb = chains[c].bbox(half);
                targets
                    .iter()
                    .any(|t| bb.overlaps(t) && (0..chains[c].segment_count()).any(|s| touches(c, s, t)))
            })
        };
        candidate[k] = reaches(&problem.start) && reaches(&problem.end);
    }
    if !candidate.iter().any(|&c| c) {
        return 0;
    }
    let parts = problem.region.len();
    let shared: Vec<Option<Aabb<F>>> = (0..parts * parts)
        .map(|k| problem.region[k / parts].intersection(&problem.region[k % parts]))
        .collect();
    let clip_targets = |targets: &[Aabb<F>]| -> Vec<Vec<Aabb<F>>> {
        problem
            .region
            .iter()
            .map(|b| targets.iter().filter_map(|t| b.intersection(t)).collect())
            .collect()
    };
    let start_in = clip_targets(&problem.start);
    let end_in = clip_targets(&problem.end);

    let dim = chains[0].dim();
    let mut atoms = Vec::new();
    let mut atom_lo = Vec::new();
    let mut atom_hi = Vec::new();
    // blocks of up to BLOCK_SEGMENTS atoms of one chain and one part
    let mut block_start = Vec::new();
    let mut lo = Vec::new();
    let mut hi = Vec::new();
    let mut diagonals = Vec::new();
    let mut max_reach = F::zero();
    for (k, cl) in labeling.clusters.iter().enumerate() {
        if !candidate[k] {
            continue;
        }
        for &c in &cl.members {
            let a = reach(c);
            max_reach = max_reach.max(a);
            let bb = chains[c].bbox(half);
            for (part, b) in problem.region.iter().enumerate() {
                if !bb.overlaps(b) {
                    continue;
                }
                let mut run = 0;
                for s in 0..chains[c].segment_count() {
                    let (p, q) = chains[c].seg(s);
                    if !segment_near_box(p, q, a, &b.lo, &b.hi) || segment_box_distance(p, q, b) > a {
                        continue;
                    }
                    if run == 0 {
                        block_start.push(atoms.len());
                        lo.extend_from_slice(&b.hi);
                        hi.extend_from_slice(&b.lo);
                    }
                    let base = (block_start.len() - 1) * dim;
                    for j in 0..dim {
                        let l = (p[j].min(q[j]) - a).max(b.lo[j]);
                        let h = (p[j].max(q[j]) + a).min(b.hi[j]).max(l);
                        atom_lo.push(l);
                        atom_hi.push(h);
                        lo[base + j] = lo[base + j].min(l);
                        hi[base + j] = hi[base + j].max(h);
                    }
                    atoms.push(Atom { chain: c, seg: s, part });
                    run += 1;
                    if run == BLOCK_SEGMENTS {
                        run = 0;
                    }
                }
            }
        }
    }
    block_start.push(atoms.len());
    let blocks = block_start.len() - 1;
    for b in 0..blocks {
        let mut diag = F::zero();
        for j in 0..dim {
            let e = hi[b * dim + j] - lo[b * dim + j];
            diag += e * e;
        }
        diagonals.push(diag.sqrt());
    }
    let mut uf = UnionFind::new(atoms.len());
    let link = |x: usize, y: usize, uf: &mut UnionFind| {
        let (a, b) = (&atoms[x], &atoms[y]);
        if uf.same(x, y) {
            return;
        }
        let overlap = (0..dim).all(|j| {
            atom_lo[x * dim + j] <= atom_hi[y * dim + j] && atom_lo[y * dim + j] <= atom_hi[x * dim + j]
        });
        if !overlap {
            return;
        }
        let Some(region) = &shared[a.part * parts + b.part] else {
            return;
        };
        let (p1, q1) = chains[a.chain].seg(a.seg);
        let (p2, q2) = chains[b.chain].seg(b.seg);
        if capsules_meet_in_box((p1, q1, reach(a.chain)), (p2, q2, reach(b.chain)), region) {
            uf.union(x, y);
        }
    };
    for b in 0..blocks {
        for x in block_start[b]..block_start[b + 1] {
            for y in x + 1..block_start[b + 1] {
                link(x, y, &mut uf);
            }
        }
    }
    let tags = (0..blocks).map(|i| (i as u32, 0)).collect();
    let cell = default_cell_size(&mut diagonals, max_reach);
    let index = SpatialIndex::from_boxes(dim, lo, hi, tags, cell);
    index.for_each_candidate_pair(|bx, by| {
        let (ax0, ay0) = (block_start[bx], block_start[by]);
        if labeling.cluster_of[atoms[ax0].chain] != labeling.cluster_of[atoms[ay0].chain] {
            return;
        }
        for x in ax0..block_start[bx + 1] {
            for y in ay0..block_start[by + 1] {
                link(x, y, &mut uf);
            }
        }
    });
    let mut flags = vec![(false, false); atoms.len()];
    for (i, at) in atoms.iter().enumerate() {
        let r = uf.find(i);
        if start_in[at.part].iter().any(|t| touches(at.chain, at.seg, t)) {
            flags[r].0 = true;
        }
        if end_in[at.part].iter().any(|t| touches(at.chain, at.seg, t)) {
            flags[r].1 = true;
        }
    }
    flags.iter().filter(|f| f.0 && f.1).count()
}

/// Whether some component of the occupied material inside `b` meets both
/// faces `{x_1 = lo_1}` and `{x_1 = hi_1}`.
pub fn crossing<F: Real>(labeling: &ClusterLabeling<F>, chains: &[CapsuleChain<F>], b: &Aabb<F>) -> bool {
    spanning_components(chains, labeling, &ClipProblem::crossing(b)) > 0
}
