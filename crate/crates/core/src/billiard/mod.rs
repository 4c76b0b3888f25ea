//! Billiard trajectories: the bounce map, coding, decoding of periodic
//! codes, and metrics on base arcs.

mod decode;
mod frame;
mod io;
mod metric;
mod sample;

use std::f64::consts::PI;

use serde::Serialize;
use thiserror::Error;

use crate::hypgeo::lorentz;
use crate::hypgeo::{
    boundary_distance, hyp_distance, reflect_geodesic, BoundaryAngle, DirectedGeodesic, DiskIsometry, DiskPoint,
    GeoError,
};
use crate::polygon::{CheckedPolygon, PolygonError, Vertex};
use crate::symdyn::{Letter, SymdynError, Violation, Word};

pub use decode::decode_periodic;
pub use frame::{frame_bounce, BounceFrame};
pub use io::{code_text, trajectory_csv, TrajectoryRow};
pub use metric::{arc_hausdorff, d_g, segment_distance};
pub use sample::{random_admissible_periodic, random_arc, random_polygon_point};

#[derive(Debug, Error, Clone)]
pub enum BilliardError {
    /// The boundary hit lies within `τ_vert` of a vertex.
    #[error("trajectory hits vertex {vertex} (distance {distance:e})")]
    VertexHit { vertex: usize, distance: f64 },
    /// The geodesic tends to an ideal vertex.
    #[error("geodesic is asymptotic to ideal vertex {vertex}")]
    AsymptoticToIdealVertex { vertex: usize },
    #[error("geodesic misses the polygon interior")]
    NoIntersection,
    #[error("trajectory terminated at a vertex at index {index}")]
    TerminatedAtVertex { index: i64, window: Box<TrajectoryWindow> },
    #[error("trajectory escaped to an ideal vertex at index {index}")]
    EscapedToIdealVertex { index: i64, window: Box<TrajectoryWindow> },
    #[error("word is not admissible: {0:?}")]
    NotAdmissible(Violation),
    #[error("holonomy is not hyperbolic: {0}")]
    NonHyperbolicHolonomy(String),
    /// The decoded geodesic does not reproduce the word.
    #[error("decoded trajectory codes {got} instead of {expected}")]
    DecodeMismatch { expected: String, got: String },
    #[error(transparent)]
    Geometry(#[from] GeoError),
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error(transparent)]
    Symdyn(#[from] SymdynError),
}

/// A segment of a billiard trajectory between two boundary hits.
///
/// The segment runs along `geodesic` from `from_point` on side `from_side`
/// to `hit_point` on side `hit_side`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BaseArc {
    #[serde(skip)]
    pub geodesic: DirectedGeodesic,
    pub from_side: usize,
    pub from_point: DiskPoint,
    pub hit_side: usize,
    pub hit_point: DiskPoint,
}

impl BaseArc {
    /// The chord of `g` through the polygon.
    pub fn from_geodesic(p: &CheckedPolygon, g: DirectedGeodesic) -> Result<Self, BilliardError> {
        let back = exit(p, &g.reversed(), None)?;
        let fwd = exit(p, &g, None)?;
        Ok(BaseArc {
            geodesic: g,
            from_side: back.0,
            from_point: back.1,
            hit_side: fwd.0,
            hit_point: fwd.1,
        })
    }

    pub fn from_endpoints(p: &CheckedPolygon, theta: f64, phi: f64) -> Result<Self, BilliardError> {
        let g = DirectedGeodesic::new(theta.into(), phi.into(), p.tolerances().sep)?;
        Self::from_geodesic(p, g)
    }

    /// The chord through the interior point `x` heading in the Euclidean
    /// direction `psi` at `x`.
    pub fn through(p: &CheckedPolygon, x: DiskPoint, psi: f64) -> Result<Self, BilliardError> {
        let back = DiskIsometry::to_origin(x).inverse();
        let diameter = DirectedGeodesic::new_unchecked((psi + PI).into(), psi.into());
        Self::from_geodesic(p, back.apply_geodesic(&diameter))
    }

    pub fn theta(&self) -> BoundaryAngle {
        self.geodesic.theta()
    }

    pub fn phi(&self) -> BoundaryAngle {
        self.geodesic.phi()
    }

    /// The same segment traversed backwards.
    pub fn reversed(&self) -> BaseArc {
        BaseArc {
            geodesic: self.geodesic.reversed(),
            from_side: self.hit_side,
            from_point: self.hit_point,
            hit_side: self.from_side,
            hit_point: self.from_point,
        }
    }

    /// Arclength parameters of the two ends along the geodesic.
    pub fn params(&self) -> (f64, f64) {
        (
            self.geodesic.param_of(self.from_point),
            self.geodesic.param_of(self.hit_point),
        )
    }

    /// Mirror image under complex conjugation with side labels mapped by `relabel`.
    pub fn conj(&self, relabel: impl Fn(usize) -> usize) -> BaseArc {
        BaseArc {
            geodesic: self.geodesic.conj(),
            from_side: relabel(self.from_side),
            from_point: self.from_point.conj(),
            hit_side: relabel(self.hit_side),
            hit_point: self.hit_point.conj(),
        }
    }
}

/// Where a geodesic starts its search for the next boundary hit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Start {
    /// The whole chord: the answer is its exit point.
    Entering,
    /// Leaving side `side` at `point`.
    From { side: usize, point: DiskPoint },
}

/// First boundary point of `p` hit by `g` in its direction of travel.
pub fn first_hit(p: &CheckedPolygon, g: &DirectedGeodesic, from: Start) -> Result<(usize, DiskPoint), BilliardError> {
    match from {
        Start::Entering => exit(p, g, None),
        Start::From { side, point } => {
            let (label, hit) = exit(p, g, Some(side))?;
            let (s0, s1) = (g.param_of(point), g.param_of(hit));
            if !(s1 > s0) {
                return Err(BilliardError::NoIntersection);
            }
            Ok((label, hit))
        }
    }
}

/// Exit side and point of the chord of `g`, ignoring side `skip`.
///
/// Along `P(s) ∝ e^{−s} N_θ + e^{s} N_φ` the side condition `⟨P, nᵢ⟩ ≤ 0`
/// reads `aᵢ e^{−s} + bᵢ e^{s} ≤ 0` with `aᵢ = ⟨N_θ, nᵢ⟩`, `bᵢ = ⟨N_φ, nᵢ⟩`,
/// which bounds `s` from above when `aᵢ < 0 < bᵢ` and from below when
/// `bᵢ < 0 < aᵢ`.
fn exit(p: &CheckedPolygon, g: &DirectedGeodesic, skip: Option<usize>) -> Result<(usize, DiskPoint), BilliardError> {
    let tol = p.tolerances();
    for (i, v) in p.vertices().iter().enumerate() {
        if let Vertex::Ideal(a) = v {
            if boundary_distance(*a, g.phi()) <= tol.sep {
                return Err(BilliardError::AsymptoticToIdealVertex { vertex: i + 1 });
            }
        }
    }
    let nt = lorentz::null_vector(g.theta());
    let np = lorentz::null_vector(g.phi());
    let mut lower = f64::NEG_INFINITY;
    let mut upper: Option<(f64, usize)> = None;
    for side in p.sides() {
        let n = side.geodesic.normal();
        let (a, b) = (lorentz::dot(nt, n), lorentz::dot(np, n));
        if a > 0.0 && b > 0.0 {
            return Err(BilliardError::NoIntersection);
        }
        if a > 0.0 && b < 0.0 {
            lower = lower.max(0.5 * (a / -b).ln());
        }
        if Some(side.label) == skip {
            continue;
        }
        if a < 0.0 && b > 0.0 {
            let s = 0.5 * (-a / b).ln();
            if upper.is_none_or(|(u, _)| s < u) {
                upper = Some((s, side.label));
            }
        }
    }
    let (s, label) = upper.ok_or(BilliardError::NoIntersection)?;
    if skip.is_none() && !(s > lower) {
        return Err(BilliardError::NoIntersection);
    }
    let hit = lorentz::to_disk(g.lorentz_point_at(s));
    check_vertices(p, hit)?;
    Ok((label, hit))
}

fn check_vertices(p: &CheckedPolygon, hit: DiskPoint) -> Result<(), BilliardError> {
    let tol = p.tolerances().vert;
    for (i, v) in p.vertices().iter().enumerate() {
        if let Vertex::Interior(q) = v {
            let d = hyp_distance(hit, *q);
            if d <= tol {
                return Err(BilliardError::VertexHit {
                    vertex: i + 1,
                    distance: d,
                });
            }
        }
    }
    Ok(())
}

/// One application of the bounce map: reflect in the hit side and follow
/// the reflected geodesic to the next hit.
pub fn bounce(p: &CheckedPolygon, arc: &BaseArc) -> Result<BaseArc, BilliardError> {
    let mirror = &p.side(arc.hit_side)?.geodesic;
    let g = reflect_geodesic(mirror, &arc.geodesic);
    let (hit_side, hit_point) = first_hit(
        p,
        &g,
        Start::From {
            side: arc.hit_side,
            point: arc.hit_point,
        },
    )?;
    Ok(BaseArc {
        geodesic: g,
        from_side: arc.hit_side,
        from_point: arc.hit_point,
        hit_side,
        hit_point,
    })
}

/// The inverse bounce, by reversing, bouncing and reversing back.
pub fn unbounce(p: &CheckedPolygon, arc: &BaseArc) -> Result<BaseArc, BilliardError> {
    Ok(bounce(p, &arc.reversed())?.reversed())
}

/// Unsigned angles between the side and the incoming and outgoing
/// directions at the bounce point of `before`.
pub fn specular_angles(p: &CheckedPolygon, before: &BaseArc, after: &BaseArc) -> Result<(f64, f64), BilliardError> {
    let side = &p.side(before.hit_side)?.geodesic;
    let at = before.hit_point;
    let ts = side.tangent_at(at);
    let angle = |t: num_complex::Complex64| {
        let c = (t.re * ts.re + t.im * ts.im).clamp(-1.0, 1.0);
        let s = t.re * ts.im - t.im * ts.re;
        s.abs().atan2(c)
    };
    Ok((
        angle(before.geodesic.tangent_at(at)),
        angle(after.geodesic.tangent_at(at)),
    ))
}

/// A finite window of a pointed trajectory, indices `−past..=future`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrajectoryWindow {
    pub arcs: Vec<BaseArc>,
    /// Position of index 0 in `arcs`.
    pub origin: usize,
}

impl TrajectoryWindow {
    pub fn single(arc: BaseArc) -> Self {
        TrajectoryWindow {
            arcs: vec![arc],
            origin: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn first_index(&self) -> i64 {
        -(self.origin as i64)
    }

    pub fn last_index(&self) -> i64 {
        self.arcs.len() as i64 - 1 - self.origin as i64
    }

    pub fn get(&self, index: i64) -> Option<&BaseArc> {
        let pos = index + self.origin as i64;
        if pos < 0 {
            None
        } else {
            self.arcs.get(pos as usize)
        }
    }

    pub fn indexed(&self) -> impl Iterator<Item = (i64, &BaseArc)> {
        let o = self.origin as i64;
        self.arcs.iter().enumerate().map(move |(i, a)| (i as i64 - o, a))
    }

    /// Labels of the hit sides, pointed at index 0.
    pub fn code(&self) -> Word {
        let letters: Vec<Letter> = self.arcs.iter().map(|a| a.hit_side as Letter).collect();
        Word::pointed(letters, self.origin).expect("a window holds at least its base arc")
    }
}

/// Simulates `n_future` bounces forward and `n_past` backward from `start`.
pub fn simulate(
    p: &CheckedPolygon,
    start: BaseArc,
    n_future: usize,
    n_past: usize,
) -> Result<TrajectoryWindow, BilliardError> {
    let mut future = Vec::with_capacity(n_future + 1);
    future.push(start);
    for i in 1..=n_future {
        match bounce(p, future.last().unwrap()) {
            Ok(a) => future.push(a),
            Err(e) => return Err(terminated(e, i as i64, future, 0)),
        }
    }
    let mut past: Vec<BaseArc> = Vec::with_capacity(n_past);
    for i in 1..=n_past {
        let prev = past.last().unwrap_or(&start);
        match unbounce(p, prev) {
            Ok(a) => past.push(a),
            Err(e) => {
                let origin = past.len();
                past.reverse();
                past.extend(future);
                return Err(terminated(e, -(i as i64), past, origin));
            }
        }
    }
    let origin = past.len();
    past.reverse();
    past.extend(future);
    Ok(TrajectoryWindow { arcs: past, origin })
}

fn terminated(e: BilliardError, index: i64, arcs: Vec<BaseArc>, origin: usize) -> BilliardError {
    let window = Box::new(TrajectoryWindow { arcs, origin });
    match e {
        BilliardError::VertexHit { .. } => BilliardError::TerminatedAtVertex { index, window },
        BilliardError::AsymptoticToIdealVertex { .. } => BilliardError::EscapedToIdealVertex { index, window },
        other => other,
    }
}

/// The pointed code of a window.
pub fn code(w: &TrajectoryWindow) -> Word {
    w.code()
}
