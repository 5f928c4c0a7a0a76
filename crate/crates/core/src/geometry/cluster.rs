use serde::{Deserialize, Serialize};

use crate::geometry::segment::segment_distance;
use crate::geometry::grid::BLOCK_SEGMENTS;
use crate::geometry::{Aabb, CapsuleChain, SpatialIndex, UnionFind};
use crate::real::Real;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cluster<F> {
    /// Chain positions in the input slice, ascending.
    pub members: Vec<usize>,
    /// Union of member boxes inflated by `radius + tol / 2`.
    pub bbox: Aabb<F>,
}

/// Connected components of the touch graph of a chain list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClusterLabeling<F> {
    pub tol: F,
    /// Canonical root per chain: the smallest chain position in its cluster.
    pub root: Vec<usize>,
    /// Dense cluster index per chain, numbered by smallest member.
    pub cluster_of: Vec<usize>,
    pub clusters: Vec<Cluster<F>>,
}

impl<F: Real> ClusterLabeling<F> {
    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    /// Builds the labeling from an already merged forest.
    pub fn from_forest(chains: &[CapsuleChain<F>], uf: &mut UnionFind, tol: F) -> Self {
        let n = chains.len();
        let mut root = vec![usize::MAX; n];
        let mut cluster_of = vec![0; n];
        let mut clusters: Vec<Cluster<F>> = Vec::new();
        let mut dense = vec![usize::MAX; n];
        let half = tol * F::of(0.5);
        for i in 0..n {
            let r = uf.find(i);
            if dense[r] == usize::MAX {
                dense[r] = clusters.len();
                clusters.push(Cluster {
                    members: Vec::new(),
                    bbox: chains[i].bbox(half),
                });
            }
            let k = dense[r];
            cluster_of[i] = k;
            let c = &mut clusters[k];
            if c.members.is_empty() {
                root[i] = i;
            } else {
                root[i] = c.members[0];
                c.bbox = c.bbox.union(&chains[i].bbox(half));
            }
            c.members.push(i);
        }
        ClusterLabeling {
            tol,
            root,
            cluster_of,
            clusters,
        }
    }
}

/// Labels the connected components of the touch graph using `index` as the
/// broad phase. `index` must come from `build_index(chains, tol)`.
pub fn cluster<F: Real>(chains: &[CapsuleChain<F>], index: &SpatialIndex<F>, tol: F) -> ClusterLabeling<F> {
    let mut uf = UnionFind::new(chains.len());
    let half = tol * F::of(0.5);
    index.for_each_candidate_pair(|x, y| {
        let (ca, sa) = index.tag(x);
        let (cb, sb) = index.tag(y);
        if ca == cb || uf.same(ca, cb) {
            return;
        }
        let (c1, c2) = (&chains[ca], &chains[cb]);
        let reach = c1.radius + c2.radius + tol;
        let ((xlo, xhi), (ylo, yhi)) = (index.item_bounds(x), index.item_bounds(y));
        let lim1 = (sa + BLOCK_SEGMENTS).min(c1.segment_count());
        let lim2 = (sb + BLOCK_SEGMENTS).min(c2.segment_count());
        for s in sa..lim1 {
            let (p1, q1) = c1.seg(s);
            if !segment_near_box(p1, q1, c1.radius + half, ylo, yhi) {
                continue;
            }
            for u in sb..lim2 {
                let (p2, q2) = c2.seg(u);
                if !segment_near_box(p2, q2, c2.radius + half, xlo, xhi) {
                    continue;
                }
                if segment_distance(p1, q1, p2, q2) <= reach {
                    uf.union(ca, cb);
                    return;
                }
            }
        }
    });
    ClusterLabeling::from_forest(chains, &mut uf, tol)
}

/// Whether the box of `[p, q]` inflated by `a` meets the box `[lo, hi]`.
#[inline]
pub(crate) fn segment_near_box<F: Real>(p: &[F], q: &[F], a: F, lo: &[F], hi: &[F]) -> bool {
    (0..p.len()).all(|j| p[j].min(q[j]) - a <= hi[j] && p[j].max(q[j]) + a >= lo[j])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::build_index;

    #[test]
    fn no_chains() {
        let idx = build_index::<f64>(&[], 0.0);
        assert!(cluster(&[], &idx, 0.0).is_empty());
    }

    #[test]
    fn collinear_balls_chain_together() {
        let chains: Vec<_> = (0..3)
            .map(|i| CapsuleChain::ball(&[1.5 * i as f64, 0.0], 1.0, i).unwrap())
            .collect();
        let idx = build_index(&chains, 0.0);
        let lab = cluster(&chains, &idx, 0.0);
        assert_eq!(lab.len(), 1);
        assert_eq!(lab.root, vec![0, 0, 0]);
        assert_eq!(lab.clusters[0].bbox.lo, vec![-1.0, -1.0]);
        assert_eq!(lab.clusters[0].bbox.hi, vec![4.0, 1.0]);
    }

    #[test]
    fn separated_balls_stay_apart() {
        let chains = vec![
            CapsuleChain::ball(&[0.0f64, 0.0], 1.0, 0).unwrap(),
            CapsuleChain::ball(&[5.0f64, 0.0], 1.0, 1).unwrap(),
            CapsuleChain::ball(&[2.0f64, 0.0], 1.0, 2).unwrap(),
        ];
        let idx = build_index(&chains, 0.0);
        let lab = cluster(&chains, &idx, 0.0);
        assert_eq!(lab.root, vec![0, 1, 0]);
        assert_eq!(lab.cluster_of, vec![0, 1, 0]);
    }
}
