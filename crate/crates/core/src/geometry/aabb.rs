use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::real::Real;

/// Closed axis-aligned box `[lo_1, hi_1] x ... x [lo_d, hi_d]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Aabb<F> {
    pub lo: Vec<F>,
    pub hi: Vec<F>,
}

impl<F: Real> Aabb<F> {
    /// Box with `lo <= hi` in every coordinate (flat boxes allowed).
    pub fn new(lo: Vec<F>, hi: Vec<F>) -> Result<Self> {
        if lo.is_empty() || lo.len() != hi.len() {
            return Err(invalid(format!(
                "box corners must share a positive dimension (got {} and {})",
                lo.len(),
                hi.len()
            )));
        }
        if lo.iter().zip(&hi).any(|(l, h)| !(l.is_finite() && h.is_finite() && l <= h)) {
            return Err(invalid("box corners must be finite with lo <= hi"));
        }
        Ok(Aabb { lo, hi })
    }

    /// `[0, N_1] x ... x [0, N_d]`.
    pub fn crossing_box(extents: &[F]) -> Result<Self> {
        let b = Aabb::new(vec![F::zero(); extents.len()], extents.to_vec())?;
        if !b.is_nondegenerate() {
            return Err(invalid("crossing box must have positive extent in every direction"));
        }
        Ok(b)
    }

    /// `[-half, half]^d` around `center`.
    pub fn cube(center: &[F], half: F) -> Self {
        Aabb {
            lo: center.iter().map(|&c| c - half).collect(),
            hi: center.iter().map(|&c| c + half).collect(),
        }
    }

    /// Bounding box of a flat coordinate list.
    pub fn of_points(dim: usize, coords: &[F]) -> Option<Self> {
        let mut pts = coords.chunks_exact(dim);
        let first = pts.next()?;
        let mut b = Aabb {
            lo: first.to_vec(),
            hi: first.to_vec(),
        };
        for p in pts {
            b.include(p);
        }
        Some(b)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.lo.iter().zip(&self.hi).all(|(l, h)| l < h)
    }

    pub fn volume(&self) -> F {
        self.lo
            .iter()
            .zip(&self.hi)
            .fold(F::one(), |v, (&l, &h)| v * (h - l))
    }

    pub fn extent(&self, axis: usize) -> F {
        self.hi[axis] - self.lo[axis]
    }

    pub fn center(&self) -> Vec<F> {
        let half = F::of(0.5);
        self.lo.iter().zip(&self.hi).map(|(&l, &h)| (l + h) * half).collect()
    }

    pub fn contains(&self, p: &[F]) -> bool {
        p.iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(&x, (&l, &h))| l <= x && x <= h)
    }

    pub fn include(&mut self, p: &[F]) {
        for (j, &x) in p.iter().enumerate() {
            if x < self.lo[j] {
                self.lo[j] = x;
            }
            if x > self.hi[j] {
                self.hi[j] = x;
            }
        }
    }

    pub fn union(&self, other: &Aabb<F>) -> Aabb<F> {
        Aabb {
            lo: self.lo.iter().zip(&other.lo).map(|(&a, &b)| a.min(b)).collect(),
            hi: self.hi.iter().zip(&other.hi).map(|(&a, &b)| a.max(b)).collect(),
        }
    }

    pub fn inflate(&self, margin: F) -> Aabb<F> {
        Aabb {
            lo: self.lo.iter().map(|&l| l - margin).collect(),
            hi: self.hi.iter().map(|&h| h + margin).collect(),
        }
    }

    pub fn translate(&self, v: &[F]) -> Aabb<F> {
        Aabb {
            lo: self.lo.iter().zip(v).map(|(&l, &x)| l + x).collect(),
            hi: self.hi.iter().zip(v).map(|(&h, &x)| h + x).collect(),
        }
    }

    /// Closed overlap test (touching boxes overlap).
    pub fn overlaps(&self, other: &Aabb<F>) -> bool {
        (0..self.dim()).all(|j| self.lo[j] <= other.hi[j] && other.lo[j] <= self.hi[j])
    }

    pub fn intersection(&self, other: &Aabb<F>) -> Option<Aabb<F>> {
        if !self.overlaps(other) {
            return None;
        }
        Some(Aabb {
            lo: self.lo.iter().zip(&other.lo).map(|(&a, &b)| a.max(b)).collect(),
            hi: self.hi.iter().zip(&other.hi).map(|(&a, &b)| a.min(b)).collect(),
        })
    }

    /// The face `{x_axis = lo_axis}` (or `hi_axis` when `upper`) as a flat box.
    pub fn face(&self, axis: usize, upper: bool) -> Aabb<F> {
        let mut f = self.clone();
        let v = if upper { self.hi[axis] } else { self.lo[axis] };
        f.lo[axis] = v;
        f.hi[axis] = v;
        f
    }

    pub fn clamp_into(&self, p: &mut [F]) {
        for (j, x) in p.iter_mut().enumerate() {
            *x = x.max(self.lo[j]).min(self.hi[j]);
        }
    }

    /// Euclidean distance from `p` to the box (zero inside).
    pub fn distance_to_point(&self, p: &[F]) -> F {
        let mut s = F::zero();
        for (j, &x) in p.iter().enumerate() {
            let d = if x < self.lo[j] {
                self.lo[j] - x
            } else if x > self.hi[j] {
                x - self.hi[j]
            } else {
                F::zero()
            };
            s += d * d;
        }
        s.sqrt()
    }
}
