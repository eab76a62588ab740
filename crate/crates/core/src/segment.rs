//! Planar segment predicates shared by embedding validation and planarization.

use crate::scalar::Scalar;

/// How two closed segments in the plane meet, up to a distance tolerance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Contact<T> {
    /// Farther apart than the tolerance.
    Disjoint,
    /// A single contact point, with its parameter along each segment in `[0, 1]`.
    Point { at: [T; 2], along_first: T, along_second: T },
    /// Collinear segments sharing a piece longer than the tolerance.
    Overlap,
}

fn sub<T: Scalar>(a: [T; 2], b: [T; 2]) -> [T; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

fn cross<T: Scalar>(a: [T; 2], b: [T; 2]) -> T {
    a[0] * b[1] - a[1] * b[0]
}

fn dot<T: Scalar>(a: [T; 2], b: [T; 2]) -> T {
    a[0] * b[0] + a[1] * b[1]
}

fn norm<T: Scalar>(a: [T; 2]) -> T {
    a[0].hypot(a[1])
}

fn lerp<T: Scalar>(a: [T; 2], b: [T; 2], t: T) -> [T; 2] {
    [a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t]
}

/// Parameter of the point on segment `a0 a1` closest to `p`, clamped to `[0, 1]`.
pub fn project<T: Scalar>(p: [T; 2], a0: [T; 2], a1: [T; 2]) -> T {
    let d = sub(a1, a0);
    let len2 = dot(d, d);
    if len2 == T::zero() {
        return T::zero();
    }
    (dot(sub(p, a0), d) / len2).max(T::zero()).min(T::one())
}

/// Euclidean distance from `p` to the closed segment `a0 a1`.
pub fn point_segment_distance<T: Scalar>(p: [T; 2], a0: [T; 2], a1: [T; 2]) -> T {
    let t = project(p, a0, a1);
    norm(sub(p, lerp(a0, a1, t)))
}

/// Classifies the contact between closed segments `a0 a1` and `b0 b1`.
///
/// Segments closer than `eps` count as touching; the reported point is then the
/// nearest endpoint.
pub fn segment_contact<T: Scalar>(a0: [T; 2], a1: [T; 2], b0: [T; 2], b1: [T; 2], eps: T) -> Contact<T> {
    let da = sub(a1, a0);
    let db = sub(b1, b0);
    let la = norm(da);
    let lb = norm(db);
    let denom = cross(da, db);

    if denom.abs() > eps * la * lb && la > eps && lb > eps {
        let w = sub(b0, a0);
        let t = cross(w, db) / denom;
        let s = cross(w, da) / denom;
        let (zero, one) = (T::zero(), T::one());
        if t >= zero && t <= one && s >= zero && s <= one {
            return Contact::Point { at: lerp(a0, a1, t), along_first: t, along_second: s };
        }
        return nearest_endpoint_contact(a0, a1, b0, b1, eps);
    }

    // Parallel or degenerate.
    if la <= eps || lb <= eps {
        return nearest_endpoint_contact(a0, a1, b0, b1, eps);
    }
    if point_segment_distance(b0, a0, a1).min(point_segment_distance(b1, a0, a1)) > eps
        && point_segment_distance(a0, b0, b1).min(point_segment_distance(a1, b0, b1)) > eps
    {
        return Contact::Disjoint;
    }
    let line_gap = cross(da, sub(b0, a0)).abs() / la;
    if line_gap > eps {
        return nearest_endpoint_contact(a0, a1, b0, b1, eps);
    }
    let tb0 = dot(sub(b0, a0), da) / (la * la);
    let tb1 = dot(sub(b1, a0), da) / (la * la);
    let lo = tb0.min(tb1).max(T::zero());
    let hi = tb0.max(tb1).min(T::one());
    if (hi - lo) * la > eps {
        Contact::Overlap
    } else {
        nearest_endpoint_contact(a0, a1, b0, b1, eps)
    }
}

fn nearest_endpoint_contact<T: Scalar>(a0: [T; 2], a1: [T; 2], b0: [T; 2], b1: [T; 2], eps: T) -> Contact<T> {
    // (endpoint, its projection parameter on the other segment, its own parameter, endpoint belongs to second)
    let candidates = [
        (b0, project(b0, a0, a1), T::zero(), true),
        (b1, project(b1, a0, a1), T::one(), true),
        (a0, project(a0, b0, b1), T::zero(), false),
        (a1, project(a1, b0, b1), T::one(), false),
    ];
    let mut best: Option<(T, Contact<T>)> = None;
    for (p, t_other, t_self, on_second) in candidates {
        let (dist, contact) = if on_second {
            let q = lerp(a0, a1, t_other);
            (norm(sub(p, q)), Contact::Point { at: p, along_first: t_other, along_second: t_self })
        } else {
            let q = lerp(b0, b1, t_other);
            (norm(sub(p, q)), Contact::Point { at: p, along_first: t_self, along_second: t_other })
        };
        if dist <= eps && best.as_ref().is_none_or(|(d, _)| dist < *d) {
            best = Some((dist, contact));
        }
    }
    best.map_or(Contact::Disjoint, |(_, c)| c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crossing_diagonals_meet_in_the_middle() {
        let c = segment_contact([0.0, 0.0], [2.0, 2.0], [0.0, 2.0], [2.0, 0.0], 1e-9);
        match c {
            Contact::Point { at, along_first, along_second } => {
                assert_eq!(at, [1.0, 1.0]);
                assert_eq!(along_first, 0.5);
                assert_eq!(along_second, 0.5);
            }
            other => panic!("expected a crossing, got {other:?}"),
        }
    }

    #[test]
    fn t_junction_reports_the_touching_endpoint() {
        let c = segment_contact([0.0, 0.0], [2.0, 0.0], [1.0, 0.0], [1.0, 1.0], 1e-9);
        match c {
            Contact::Point { at, along_first, along_second } => {
                assert_eq!(at, [1.0, 0.0]);
                assert_eq!(along_first, 0.5);
                assert_eq!(along_second, 0.0);
            }
            other => panic!("expected a touch, got {other:?}"),
        }
    }

    #[test]
    fn collinear_overlap_and_disjoint_parallels() {
        assert_eq!(
            segment_contact([0.0, 0.0], [2.0, 0.0], [1.0, 0.0], [3.0, 0.0], 1e-9),
            Contact::Overlap
        );
        assert_eq!(
            segment_contact([0.0, 0.0], [2.0, 0.0], [0.0, 1.0], [2.0, 1.0], 1e-9),
            Contact::Disjoint
        );
        assert_eq!(
            segment_contact([0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [3.0, 0.0], 1e-9),
            Contact::Disjoint
        );
    }

    #[test]
    fn near_miss_within_tolerance_counts_as_contact() {
        let c = segment_contact([0.0, 0.0], [2.0, 0.0], [1.0, 1e-12], [1.0, 1.0], 1e-9);
        assert!(matches!(c, Contact::Point { .. }));
        let c = segment_contact([0.0, 0.0], [2.0, 0.0], [1.0, 1e-6], [1.0, 1.0], 1e-9);
        assert_eq!(c, Contact::Disjoint);
    }
}
