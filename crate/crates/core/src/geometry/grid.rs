//! Uniform-grid broad phase stored as a compressed cell list.

use crate::geometry::{Aabb, CapsuleChain};
use crate::real::Real;

/// Items (boxes tagged with `(owner, part)`) bucketed into cubic cells.
///
/// Each item is registered in every cell its closed box overlaps. Cells are
/// keyed by a mixed-radix integer and stored sorted, with the item slots of a
/// cell contiguous.
#[derive(Clone, Debug)]
pub struct SpatialIndex<F> {
    pub dim: usize,
    pub cell_size: F,
    origin: Vec<F>,
    shape: Vec<u64>,
    tags: Vec<(u32, u32)>,
    lo: Vec<F>,
    hi: Vec<F>,
    lo_cell: Vec<u64>,
    keys: Vec<u64>,
    starts: Vec<usize>,
    slots: Vec<u32>,
}

impl<F: Real> SpatialIndex<F> {
    pub fn empty(dim: usize) -> Self {
        SpatialIndex {
            dim,
            cell_size: F::one(),
            origin: vec![F::zero(); dim],
            shape: vec![1; dim],
            tags: Vec::new(),
            lo: Vec::new(),
            hi: Vec::new(),
            lo_cell: Vec::new(),
            keys: Vec::new(),
            starts: vec![0],
            slots: Vec::new(),
        }
    }

    /// Builds the index over flat box corners `lo`, `hi` (`dim` values per item).
    pub fn from_boxes(dim: usize, lo: Vec<F>, hi: Vec<F>, tags: Vec<(u32, u32)>, cell_size: F) -> Self {
        let n = tags.len();
        if n == 0 {
            return SpatialIndex::empty(dim);
        }
        let mut origin = lo[..dim].to_vec();
        let mut top = hi[..dim].to_vec();
        for i in 1..n {
            for j in 0..dim {
                origin[j] = origin[j].min(lo[i * dim + j]);
                top[j] = top[j].max(hi[i * dim + j]);
            }
        }
        let mut cell_size = if cell_size > F::zero() && cell_size.is_finite() {
            cell_size
        } else {
            F::one()
        };
        let shape = loop {
            let shape: Vec<u64> = (0..dim)
                .map(|j| ((top[j] - origin[j]) / cell_size).floor().to_u64().unwrap_or(u64::MAX).saturating_add(1))
                .collect();
            let fits = shape
                .iter()
                .try_fold(1u64, |acc, &s| acc.checked_mul(s).filter(|&v| v < (1u64 << 62)))
                .is_some();
            if fits {
                break shape;
            }
            cell_size = cell_size * F::of(2.0);
        };
        let cell = |x: F, j: usize| -> u64 {
            let c = ((x - origin[j]) / cell_size).floor().to_u64().unwrap_or(0);
            c.min(shape[j] - 1)
        };
        let mut lo_cell = Vec::with_capacity(n * dim);
        let mut hi_cell = Vec::with_capacity(n * dim);
        for i in 0..n {
            for j in 0..dim {
                lo_cell.push(cell(lo[i * dim + j], j));
                hi_cell.push(cell(hi[i * dim + j], j));
            }
        }
        let mut pairs: Vec<(u64, u32)> = Vec::with_capacity(n);
        let mut cur = vec![0u64; dim];
        for i in 0..n {
            let l = &lo_cell[i * dim..(i + 1) * dim];
            let h = &hi_cell[i * dim..(i + 1) * dim];
            cur.copy_from_slice(l);
            loop {
                pairs.push((linear_key(&cur, &shape), i as u32));
                let mut j = 0;
                while j < dim {
                    if cur[j] < h[j] {
                        cur[j] += 1;
                        break;
                    }
                    cur[j] = l[j];
                    j += 1;
                }
                if j == dim {
                    break;
                }
            }
        }
        pairs.sort_unstable();
        let mut keys = Vec::new();
        let mut starts = Vec::new();
        let mut slots = Vec::with_capacity(pairs.len());
        for (k, (key, item)) in pairs.iter().enumerate() {
            if k == 0 || pairs[k - 1].0 != *key {
                keys.push(*key);
                starts.push(slots.len());
            }
            slots.push(*item);
        }
        starts.push(slots.len());
        SpatialIndex {
            dim,
            cell_size,
            origin,
            shape,
            tags,
            lo,
            hi,
            lo_cell,
            keys,
            starts,
            slots,
        }
    }

    pub fn item_count(&self) -> usize {
        self.tags.len()
    }

    pub fn occupied_cells(&self) -> usize {
        self.keys.len()
    }

    #[inline]
    pub fn tag(&self, item: usize) -> (usize, usize) {
        let (a, b) = self.tags[item];
        (a as usize, b as usize)
    }

    /// Lower and upper corners of an item box.
    #[inline]
    pub fn item_bounds(&self, item: usize) -> (&[F], &[F]) {
        let d = self.dim;
        (&self.lo[item * d..(item + 1) * d], &self.hi[item * d..(item + 1) * d])
    }

    pub fn item_box(&self, item: usize) -> Aabb<F> {
        let d = self.dim;
        Aabb {
            lo: self.lo[item * d..(item + 1) * d].to_vec(),
            hi: self.hi[item * d..(item + 1) * d].to_vec(),
        }
    }

    #[inline]
    fn boxes_overlap(&self, a: usize, b: usize) -> bool {
        let d = self.dim;
        (0..d).all(|j| self.lo[a * d + j] <= self.hi[b * d + j] && self.lo[b * d + j] <= self.hi[a * d + j])
    }

    /// Calls `f(i, j)` once for every pair of items whose boxes overlap.
    ///
    /// A pair is reported only from the cell containing the componentwise
    /// maximum of the two lower corners, which lies in both boxes.
    pub fn for_each_candidate_pair<G: FnMut(usize, usize)>(&self, mut f: G) {
        let d = self.dim;
        let mut owner = vec![0u64; d];
        for (c, &key) in self.keys.iter().enumerate() {
            let cell = &self.slots[self.starts[c]..self.starts[c + 1]];
            for (x, &a) in cell.iter().enumerate() {
                let a = a as usize;
                for &b in &cell[x + 1..] {
                    let b = b as usize;
                    if !self.boxes_overlap(a, b) {
                        continue;
                    }
                    for j in 0..d {
                        owner[j] = self.lo_cell[a * d + j].max(self.lo_cell[b * d + j]);
                    }
                    if linear_key(&owner, &self.shape) == key {
                        f(a, b);
                    }
                }
            }
        }
    }

    /// Items whose boxes overlap `query` (closed test).
    pub fn query_items(&self, query: &Aabb<F>) -> Vec<usize> {
        if self.tags.is_empty() {
            return Vec::new();
        }
        let d = self.dim;
        let mut lo = vec![0u64; d];
        let mut hi = vec![0u64; d];
        for j in 0..d {
            let top = F::of((self.shape[j] - 1) as f64);
            let l = ((query.lo[j] - self.origin[j]) / self.cell_size).floor();
            let h = ((query.hi[j] - self.origin[j]) / self.cell_size).floor();
            if h < F::zero() || l > top {
                return Vec::new();
            }
            lo[j] = l.max(F::zero()).to_u64().unwrap_or(0);
            hi[j] = h.min(top).to_u64().unwrap_or(0);
        }
        let mut out = Vec::new();
        let mut cur = lo.clone();
        loop {
            if let Ok(c) = self.keys.binary_search(&linear_key(&cur, &self.shape)) {
                for &s in &self.slots[self.starts[c]..self.starts[c + 1]] {
                    let s = s as usize;
                    let b = self.item_box(s);
                    if b.overlaps(query) {
                        out.push(s);
                    }
                }
            }
            let mut j = 0;
            while j < d {
                if cur[j] < hi[j] {
                    cur[j] += 1;
                    break;
                }
                cur[j] = lo[j];
                j += 1;
            }
            if j == d {
                break;
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Distinct owners of items overlapping `query`.
    pub fn query(&self, query: &Aabb<F>) -> Vec<usize> {
        let mut owners: Vec<usize> = self.query_items(query).into_iter().map(|i| self.tag(i).0).collect();
        owners.sort_unstable();
        owners.dedup();
        owners
    }
}

#[inline]
fn linear_key(cell: &[u64], shape: &[u64]) -> u64 {
    let mut k = 0u64;
    for j in (0..cell.len()).rev() {
        k = k * shape[j] + cell[j];
    }
    k
}

/// Median of `diagonals` clamped to `[reach, 4 reach]`.
pub fn default_cell_size<F: Real>(diagonals: &mut [F], reach: F) -> F {
    if diagonals.is_empty() {
        return F::one();
    }
    let mid = diagonals.len() / 2;
    let (_, m, _) = diagonals.select_nth_unstable_by(mid, |a, b| a.partial_cmp(b).expect("finite"));
    let m = *m;
    let c = if reach > F::zero() {
        m.max(reach).min(F::of(4.0) * reach)
    } else {
        m
    };
    if c > F::zero() {
        c
    } else {
        F::one()
    }
}

/// Consecutive segments of a chain grouped into one broad-phase item.
pub const BLOCK_SEGMENTS: usize = 8;

/// Boxes of runs of up to [`BLOCK_SEGMENTS`] consecutive segments, inflated
/// by `radius + tol / 2` and tagged `(chain, first segment)`.
pub fn build_index<F: Real>(chains: &[CapsuleChain<F>], tol: F) -> SpatialIndex<F> {
    let Some(first) = chains.first() else {
        return SpatialIndex::empty(0);
    };
    let dim = first.dim();
    let half_tol = tol * F::of(0.5);
    let total: usize = chains.iter().map(|c| c.segment_count().div_ceil(BLOCK_SEGMENTS)).sum();
    let mut lo = Vec::with_capacity(total * dim);
    let mut hi = Vec::with_capacity(total * dim);
    let mut tags = Vec::with_capacity(total);
    let mut diagonals = Vec::with_capacity(total);
    let mut reach = F::zero();
    let mut blo = vec![F::zero(); dim];
    let mut bhi = vec![F::zero(); dim];
    for (ci, c) in chains.iter().enumerate() {
        let a = c.radius + half_tol;
        reach = reach.max(a);
        let n = c.segment_count();
        let mut s0 = 0;
        while s0 < n {
            let s1 = (s0 + BLOCK_SEGMENTS).min(n);
            let (p, _) = c.seg(s0);
            blo.copy_from_slice(p);
            bhi.copy_from_slice(p);
            for s in s0..s1 {
                let (_, q) = c.seg(s);
                for j in 0..dim {
                    blo[j] = blo[j].min(q[j]);
                    bhi[j] = bhi[j].max(q[j]);
                }
            }
            let mut diag = F::zero();
            for j in 0..dim {
                let l = blo[j] - a;
                let h = bhi[j] + a;
                lo.push(l);
                hi.push(h);
                diag += (h - l) * (h - l);
            }
            diagonals.push(diag.sqrt());
            tags.push((ci as u32, s0 as u32));
            s0 = s1;
        }
    }
    let cell = default_cell_size(&mut diagonals, reach);
    SpatialIndex::from_boxes(dim, lo, hi, tags, cell)
}
