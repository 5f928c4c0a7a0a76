//! Closest-point queries between segments, points and boxes.

use crate::geometry::Aabb;
use crate::real::Real;

/// Parameter of the point of `[p, q]` closest to `x`.
pub fn closest_param_point<F: Real>(p: &[F], q: &[F], x: &[F]) -> F {
    let mut uu = F::zero();
    let mut ux = F::zero();
    for j in 0..p.len() {
        let u = q[j] - p[j];
        uu += u * u;
        ux += u * (x[j] - p[j]);
    }
    if uu <= F::zero() {
        F::zero()
    } else {
        (ux / uu).max(F::zero()).min(F::one())
    }
}

pub fn point_segment_distance<F: Real>(x: &[F], p: &[F], q: &[F]) -> F {
    let s = closest_param_point(p, q, x);
    let mut acc = F::zero();
    for j in 0..p.len() {
        let c = p[j] + s * (q[j] - p[j]) - x[j];
        acc += c * c;
    }
    acc.sqrt()
}

/// Parameters `(s, u)` of a closest pair between `[p1, q1]` and `[p2, q2]`.
pub fn closest_params<F: Real>(p1: &[F], q1: &[F], p2: &[F], q2: &[F]) -> (F, F) {
    let dim = p1.len();
    let mut a = F::zero();
    let mut e = F::zero();
    let mut b = F::zero();
    let mut c = F::zero();
    let mut f = F::zero();
    for j in 0..dim {
        let d1 = q1[j] - p1[j];
        let d2 = q2[j] - p2[j];
        let r = p1[j] - p2[j];
        a += d1 * d1;
        e += d2 * d2;
        b += d1 * d2;
        c += d1 * r;
        f += d2 * r;
    }
    let zero = F::zero();
    let one = F::one();
    let clamp = |x: F| x.max(zero).min(one);
    if a <= zero && e <= zero {
        return (zero, zero);
    }
    if a <= zero {
        return (zero, clamp(f / e));
    }
    if e <= zero {
        return (clamp(-c / a), zero);
    }
    let denom = a * e - b * b;
    let mut s = if denom > zero { clamp((b * f - c * e) / denom) } else { zero };
    let mut u = (b * s + f) / e;
    if u < zero {
        u = zero;
        s = clamp(-c / a);
    } else if u > one {
        u = one;
        s = clamp((b - c) / a);
    }
    (s, u)
}

/// Minimum Euclidean distance between two closed segments (points allowed).
pub fn segment_distance<F: Real>(p1: &[F], q1: &[F], p2: &[F], q2: &[F]) -> F {
    let (s, u) = closest_params(p1, q1, p2, q2);
    let mut acc = F::zero();
    for j in 0..p1.len() {
        let x = p1[j] + s * (q1[j] - p1[j]);
        let y = p2[j] + u * (q2[j] - p2[j]);
        acc += (x - y) * (x - y);
    }
    let d = acc.sqrt();
    // the clamped solution can miss an endpoint pair in nearly parallel cases
    let ends = [
        point_segment_distance(p1, p2, q2),
        point_segment_distance(q1, p2, q2),
        point_segment_distance(p2, p1, q1),
        point_segment_distance(q2, p1, q1),
    ];
    ends.into_iter().fold(d, F::min)
}

/// Euclidean distance from the segment `[p, q]` to a closed box.
///
/// The squared distance is a convex piecewise quadratic in the segment
/// parameter; each piece between breakpoints is minimized in closed form.
pub fn segment_box_distance<F: Real>(p: &[F], q: &[F], b: &Aabb<F>) -> F {
    let dim = p.len();
    let zero = F::zero();
    let one = F::one();
    let mut stack = [zero; 18];
    let mut heap = Vec::new();
    let cap = 2 + 2 * dim;
    let buf: &mut [F] = if cap <= stack.len() {
        &mut stack[..cap]
    } else {
        heap.resize(cap, zero);
        &mut heap
    };
    buf[0] = zero;
    buf[1] = one;
    let mut n = 2;
    for j in 0..dim {
        let u = q[j] - p[j];
        if u != zero {
            for bound in [b.lo[j], b.hi[j]] {
                let s = (bound - p[j]) / u;
                if s > zero && s < one {
                    buf[n] = s;
                    n += 1;
                }
            }
        }
    }
    let breaks = &mut buf[..n];
    breaks.sort_unstable_by(|x, y| x.partial_cmp(y).expect("finite breakpoints"));
    let half = F::of(0.5);
    let mut best = F::infinity();
    for w in breaks.windows(2) {
        let (s0, s1) = (w[0], w[1]);
        let mid = (s0 + s1) * half;
        // quadratic A s^2 + B s + C on this piece
        let (mut qa, mut qb, mut qc) = (zero, zero, zero);
        for j in 0..dim {
            let u = q[j] - p[j];
            let x = p[j] + mid * u;
            let target = if x < b.lo[j] {
                b.lo[j]
            } else if x > b.hi[j] {
                b.hi[j]
            } else {
                continue;
            };
            let off = p[j] - target;
            qa += u * u;
            qb += F::of(2.0) * u * off;
            qc += off * off;
        }
        let eval = |s: F| (qa * s + qb) * s + qc;
        let mut m = eval(s0).min(eval(s1));
        if qa > zero {
            let s = (-qb / (F::of(2.0) * qa)).max(s0).min(s1);
            m = m.min(eval(s));
        }
        best = best.min(m);
    }
    // breakpoints where a single point is evaluated exactly
    for &s in breaks.iter() {
        let mut acc = zero;
        for j in 0..dim {
            let x = p[j] + s * (q[j] - p[j]);
            let e = if x < b.lo[j] {
                b.lo[j] - x
            } else if x > b.hi[j] {
                x - b.hi[j]
            } else {
                zero
            };
            acc += e * e;
        }
        best = best.min(acc);
    }
    best.max(zero).sqrt()
}
