use serde::{Deserialize, Serialize};

use crate::error::{ensure, Result};
use crate::geometry::segment::segment_distance;
use crate::geometry::Aabb;
use crate::real::Real;
use crate::stochastic::Polyline;

/// A polyline thickened by `radius`: the union of closed balls of that radius
/// centred on the path. A single position gives a ball.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CapsuleChain<F> {
    pub path: Polyline<F>,
    pub radius: F,
    pub id: usize,
}

impl<F: Real> CapsuleChain<F> {
    pub fn new(path: Polyline<F>, radius: F, id: usize) -> Result<Self> {
        ensure(radius >= F::zero() && radius.is_finite(), || format!("capsule radius must be >= 0 (got {radius})"))?;
        ensure(!path.is_empty(), || "capsule path has no positions".into())?;
        Ok(CapsuleChain { path, radius, id })
    }

    pub fn ball(center: &[F], radius: F, id: usize) -> Result<Self> {
        CapsuleChain::new(Polyline::point(center), radius, id)
    }

    /// Straight capsule from `a` to `b`.
    pub fn segment(a: &[F], b: &[F], radius: F, id: usize) -> Result<Self> {
        let mut coords = a.to_vec();
        coords.extend_from_slice(b);
        CapsuleChain::new(Polyline::from_positions(a.len(), coords)?, radius, id)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.path.dim
    }

    #[inline]
    pub fn segment_count(&self) -> usize {
        self.path.segment_count()
    }

    #[inline]
    pub fn seg(&self, i: usize) -> (&[F], &[F]) {
        self.path.segment(i)
    }

    /// Bounding box of the path inflated by `radius + extra`.
    pub fn bbox(&self, extra: F) -> Aabb<F> {
        Aabb::of_points(self.dim(), &self.path.coords)
            .expect("non-empty path")
            .inflate(self.radius + extra)
    }
}

/// Whether some pair of segments lies within `r1 + r2 + tol` (closed test).
pub fn chains_touch<F: Real>(c1: &CapsuleChain<F>, c2: &CapsuleChain<F>, tol: F) -> bool {
    let reach = c1.radius + c2.radius + tol;
    if !c1.bbox(F::zero()).overlaps(&c2.bbox(tol)) {
        return false;
    }
    for i in 0..c1.segment_count() {
        let (p1, q1) = c1.seg(i);
        for k in 0..c2.segment_count() {
            let (p2, q2) = c2.seg(k);
            if segment_distance(p1, q1, p2, q2) <= reach {
                return true;
            }
        }
    }
    false
}
