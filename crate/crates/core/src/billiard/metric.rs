use crate::hypgeo::{boundary_distance, hyp_distance, DiskPoint};

use super::BaseArc;

/// Boundary metric on base arcs: the larger of the circular distances
/// between initial and between terminal angles.
pub fn d_g(a: &BaseArc, b: &BaseArc) -> f64 {
    boundary_distance(a.theta(), b.theta()).max(boundary_distance(a.phi(), b.phi()))
}

/// Hyperbolic distance from `x` to the segment of `arc`.
///
/// The nearest point of a geodesic segment is the foot of the
/// perpendicular clamped to the segment's parameter range.
pub fn segment_distance(x: DiskPoint, arc: &BaseArc) -> f64 {
    let (s0, s1) = arc.params();
    let (lo, hi) = if s0 <= s1 { (s0, s1) } else { (s1, s0) };
    let s = arc.geodesic.param_of(x).clamp(lo, hi);
    hyp_distance(x, arc.geodesic.point_at(s))
}

fn samples_of(arc: &BaseArc, n: usize) -> impl Iterator<Item = DiskPoint> + '_ {
    let (s0, s1) = arc.params();
    let n = n.max(2);
    (0..n).map(move |i| {
        let t = i as f64 / (n - 1) as f64;
        arc.geodesic.point_at(s0 + t * (s1 - s0))
    })
}

/// Hausdorff distance between two arc segments, maximizing over `samples`
/// evenly spaced points of each (endpoints included).
pub fn arc_hausdorff(a: &BaseArc, b: &BaseArc, samples: usize) -> f64 {
    let one = |x: &BaseArc, y: &BaseArc| {
        samples_of(x, samples)
            .map(|p| segment_distance(p, y))
            .fold(0.0, f64::max)
    };
    one(a, b).max(one(b, a))
}
