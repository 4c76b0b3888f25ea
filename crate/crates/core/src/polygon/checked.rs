use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::{PolygonError, PolygonSpec, VertexSpec};
use crate::config::Tolerances;
use crate::hypgeo::lorentz::{self, Vec3};
use crate::hypgeo::{BoundaryAngle, DirectedGeodesic, DiskIsometry, DiskPoint};

/// A realized vertex.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Vertex {
    Interior(DiskPoint),
    Ideal(BoundaryAngle),
}

impl Vertex {
    /// Hyperboloid point, or the null vector `(cos ψ, sin ψ, 1)` at infinity.
    pub fn lorentz(&self) -> Vec3 {
        match self {
            Vertex::Interior(p) => lorentz::lift(*p),
            Vertex::Ideal(a) => lorentz::null_vector(*a),
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Vertex::Interior(p) => p.to_complex(),
            Vertex::Ideal(a) => a.to_complex(),
        }
    }

    pub fn is_ideal(&self) -> bool {
        matches!(self, Vertex::Ideal(_))
    }

    pub fn map(&self, g: &DiskIsometry) -> Vertex {
        match self {
            Vertex::Interior(p) => Vertex::Interior(g.apply(*p)),
            Vertex::Ideal(a) => Vertex::Ideal(g.apply_boundary(*a)),
        }
    }

    pub(crate) fn from_lorentz(v: Vec3, ideal: bool) -> Vertex {
        if ideal {
            Vertex::Ideal(lorentz::null_angle(v))
        } else {
            Vertex::Interior(lorentz::to_disk(v))
        }
    }
}

/// A side of a polygon: the complete geodesic through its endpoints,
/// oriented from `start` to `end` so that its normal points outward.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Side {
    pub label: usize,
    pub geodesic: DirectedGeodesic,
    pub start: Vertex,
    pub end: Vertex,
}

/// A validated polygon with realized vertices and labeled sides.
///
/// Vertex `vᵢ` is stored at index `i − 1`; side `i` joins `v_{i−1}` and `vᵢ`,
/// so the sides adjacent to `vᵢ` are `i` and `i + 1` (indices mod k).
#[derive(Debug, Clone)]
pub struct CheckedPolygon {
    spec: PolygonSpec,
    vertices: Vec<Vertex>,
    sides: Vec<Side>,
    tolerances: Tolerances,
}

impl CheckedPolygon {
    pub(crate) fn from_vertices(
        spec: PolygonSpec,
        vertices: Vec<Vertex>,
        tolerances: Tolerances,
    ) -> Result<Self, PolygonError> {
        let k = vertices.len();
        for (i, (v, s)) in vertices.iter().zip(&spec.vertices).enumerate() {
            if v.is_ideal() != s.is_ideal() {
                return Err(PolygonError::MalformedVertex {
                    vertex: i + 1,
                    reason: "realized vertex kind differs from the specification".into(),
                });
            }
        }
        let lv: Vec<Vec3> = vertices.iter().map(Vertex::lorentz).collect();
        let mut normals = Vec::with_capacity(k);
        for i in 0..k {
            let a = lv[(i + k - 1) % k];
            let b = lv[i];
            let c = lorentz::cross(lorentz::flip(a), lorentz::flip(b));
            if !(lorentz::dot(c, c) > 0.0) {
                return Err(PolygonError::NotConvex(format!(
                    "vertices {} and {} coincide",
                    (i + k - 1) % k + 1,
                    i + 1
                )));
            }
            normals.push(lorentz::normalize_spacelike(c));
        }
        for (i, n) in normals.iter().enumerate() {
            for (j, v) in lv.iter().enumerate() {
                if j == i || j == (i + k - 1) % k {
                    continue;
                }
                let s = lorentz::dot(*v, *n) / v[2];
                if !(s < -tolerances.geo) {
                    let reason = if s > 0.0 && i == 0 && j == 1 {
                        "vertices must be listed counter-clockwise".to_string()
                    } else {
                        format!("vertex {} is not strictly inside side {}", j + 1, i + 1)
                    };
                    return Err(PolygonError::NotConvex(reason));
                }
            }
        }
        for i in 0..k {
            if spec.vertices[i].is_ideal() {
                continue;
            }
            let realized = interior_angle(normals[i], normals[(i + 1) % k]);
            let expected = spec.vertices[i].interior_angle();
            if (realized - expected).abs() > tolerances.ang {
                return Err(PolygonError::AngleMismatch {
                    vertex: i + 1,
                    expected,
                    realized,
                });
            }
        }
        let sides = (0..k)
            .map(|i| Side {
                label: i + 1,
                geodesic: DirectedGeodesic::from_normal(normals[i]),
                start: vertices[(i + k - 1) % k],
                end: vertices[i],
            })
            .collect();
        Ok(CheckedPolygon {
            spec,
            vertices,
            sides,
            tolerances,
        })
    }

    pub fn spec(&self) -> &PolygonSpec {
        &self.spec
    }

    pub fn k(&self) -> usize {
        self.vertices.len()
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tolerances
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Vertex `vᵢ` for a 1-based label.
    pub fn vertex(&self, label: usize) -> Vertex {
        self.vertices[label - 1]
    }

    pub fn vertex_spec(&self, label: usize) -> &VertexSpec {
        &self.spec.vertices[label - 1]
    }

    pub fn sides(&self) -> &[Side] {
        &self.sides
    }

    /// Side for a 1-based label.
    pub fn side(&self, label: usize) -> Result<&Side, PolygonError> {
        if label == 0 || label > self.k() {
            return Err(PolygonError::InvalidSide { label, k: self.k() });
        }
        Ok(&self.sides[label - 1])
    }

    /// Realized interior angle at `vᵢ`.
    pub fn realized_angle(&self, label: usize) -> f64 {
        let k = self.k();
        if self.vertices[label - 1].is_ideal() {
            return 0.0;
        }
        interior_angle(
            self.sides[label - 1].geodesic.normal(),
            self.sides[label % k].geodesic.normal(),
        )
    }

    pub fn area(&self) -> f64 {
        self.spec.area()
    }

    /// Whether `p` lies in the closed polygon, up to the geometric tolerance.
    pub fn contains(&self, p: DiskPoint) -> bool {
        let v = lorentz::lift(p);
        self.sides
            .iter()
            .all(|s| lorentz::dot(v, s.geodesic.normal()) <= self.tolerances.geo * v[2])
    }

    pub fn reflection(&self, label: usize) -> Result<DiskIsometry, PolygonError> {
        Ok(DiskIsometry::reflection(&self.side(label)?.geodesic))
    }

    /// The point `normalize(Σ wᵢ Vᵢ)` for nonnegative weights; every such
    /// point lies in the closed polygon.
    pub fn interior_point(&self, weights: &[f64]) -> DiskPoint {
        let mut acc = [0.0; 3];
        for (v, w) in self.vertices.iter().zip(weights) {
            let l = v.lorentz();
            acc = lorentz::add(acc, lorentz::scale(l, w / l[2]));
        }
        lorentz::to_disk(lorentz::normalize_timelike(acc))
    }

    /// A canonical interior point: the normalized sum of the vertex vectors.
    pub fn center(&self) -> DiskPoint {
        self.interior_point(&vec![1.0; self.k()])
    }
}

/// Interior angle between consecutive sides with outward normals `a`, `b`.
pub(crate) fn interior_angle(a: Vec3, b: Vec3) -> f64 {
    let c = -lorentz::dot(a, b);
    if c >= 1.0 {
        0.0
    } else if c <= -1.0 {
        PI
    } else {
        c.acos()
    }
}
