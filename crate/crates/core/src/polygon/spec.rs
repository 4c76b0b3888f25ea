use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::PolygonError;
use crate::hypgeo::{BoundaryAngle, DiskPoint};

/// One vertex of a polygon specification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VertexSpec {
    /// A vertex at infinity; interior angle 0.
    Ideal { position: Option<BoundaryAngle> },
    /// An interior vertex with interior angle `π/lambda`.
    Rational { lambda: u32, position: Option<DiskPoint> },
}

impl VertexSpec {
    pub fn ideal() -> Self {
        VertexSpec::Ideal { position: None }
    }

    pub fn ideal_at(angle: f64) -> Self {
        VertexSpec::Ideal {
            position: Some(BoundaryAngle::new(angle)),
        }
    }

    pub fn rational(lambda: u32) -> Self {
        VertexSpec::Rational { lambda, position: None }
    }

    pub fn rational_at(lambda: u32, position: DiskPoint) -> Self {
        VertexSpec::Rational {
            lambda,
            position: Some(position),
        }
    }

    pub fn is_ideal(&self) -> bool {
        matches!(self, VertexSpec::Ideal { .. })
    }

    pub fn lambda(&self) -> Option<u32> {
        match self {
            VertexSpec::Ideal { .. } => None,
            VertexSpec::Rational { lambda, .. } => Some(*lambda),
        }
    }

    /// Prescribed interior angle: `π/λ`, or 0 at infinity.
    pub fn interior_angle(&self) -> f64 {
        match self {
            VertexSpec::Ideal { .. } => 0.0,
            VertexSpec::Rational { lambda, .. } => PI / *lambda as f64,
        }
    }

    /// The same vertex kind with any position hint dropped.
    pub fn without_position(&self) -> Self {
        match *self {
            VertexSpec::Ideal { .. } => VertexSpec::ideal(),
            VertexSpec::Rational { lambda, .. } => VertexSpec::rational(lambda),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolygonClass {
    Ideal,
    CompactRational,
    SemiIdealRational,
}

impl PolygonClass {
    pub fn name(&self) -> &'static str {
        match self {
            PolygonClass::Ideal => "ideal",
            PolygonClass::CompactRational => "compact_rational",
            PolygonClass::SemiIdealRational => "semi_ideal_rational",
        }
    }

    /// The class implied by a list of vertex kinds.
    pub fn of_vertices(vertices: &[VertexSpec]) -> Self {
        let ideal = vertices.iter().filter(|v| v.is_ideal()).count();
        if ideal == vertices.len() {
            PolygonClass::Ideal
        } else if ideal == 0 {
            PolygonClass::CompactRational
        } else {
            PolygonClass::SemiIdealRational
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Placement {
    #[default]
    RegularSymmetric,
    Explicit,
}

/// Declarative description of a polygon; vertices are listed counter-clockwise.
#[derive(Debug, Clone, PartialEq)]
pub struct PolygonSpec {
    pub class: PolygonClass,
    pub vertices: Vec<VertexSpec>,
    pub placement: Placement,
    /// Angle of the first vertex for symmetric placements.
    pub rotation: f64,
}

impl PolygonSpec {
    /// A symmetric placement whose class follows from the vertex kinds.
    pub fn symmetric(vertices: Vec<VertexSpec>) -> Self {
        PolygonSpec {
            class: PolygonClass::of_vertices(&vertices),
            vertices,
            placement: Placement::RegularSymmetric,
            rotation: 0.0,
        }
    }

    pub fn regular(k: usize, vertex: VertexSpec) -> Self {
        Self::symmetric(vec![vertex.without_position(); k])
    }

    pub fn ideal(k: usize) -> Self {
        Self::regular(k, VertexSpec::ideal())
    }

    pub fn triangle(lambdas: [Option<u32>; 3]) -> Self {
        Self::symmetric(
            lambdas
                .iter()
                .map(|l| l.map_or(VertexSpec::ideal(), VertexSpec::rational))
                .collect(),
        )
    }

    pub fn k(&self) -> usize {
        self.vertices.len()
    }

    /// Gauss–Bonnet area `(k − 2)π − Σ αᵢ` from the prescribed angles.
    pub fn area(&self) -> f64 {
        let k = self.k() as f64;
        (k - 2.0) * PI - self.vertices.iter().map(|v| v.interior_angle()).sum::<f64>()
    }

    /// Checks everything that does not need a realization: vertex count,
    /// class consistency, angle rationality and positive area.
    pub fn check(&self) -> Result<(), PolygonError> {
        let k = self.k();
        if k < 3 {
            return Err(PolygonError::TooFewVertices(k));
        }
        let implied = PolygonClass::of_vertices(&self.vertices);
        if implied != self.class {
            return Err(PolygonError::ClassMismatch {
                declared: self.class.name(),
                implied: implied.name(),
            });
        }
        for (i, v) in self.vertices.iter().enumerate() {
            if let Some(l) = v.lambda() {
                if l < 2 {
                    return Err(PolygonError::NonRationalAngle {
                        vertex: i + 1,
                        lambda: l as f64,
                    });
                }
            }
        }
        if !self.rotation.is_finite() {
            return Err(PolygonError::Parse("rotation_rad must be finite".into()));
        }
        let area = self.area();
        if area <= 1e-12 {
            return Err(PolygonError::DegenerateArea { area });
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self, PolygonError> {
        let raw: RawPolygon = serde_json::from_str(text).map_err(|e| PolygonError::Parse(e.to_string()))?;
        raw.into_spec()
    }

    pub fn from_value(value: serde_json::Value) -> Result<Self, PolygonError> {
        let raw: RawPolygon = serde_json::from_value(value).map_err(|e| PolygonError::Parse(e.to_string()))?;
        raw.into_spec()
    }

    pub fn to_value(&self) -> serde_json::Value {
        serde_json::to_value(RawPolygon::from_spec(self)).expect("polygon spec serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("polygon spec serializes")
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum RawKind {
    Ideal,
    Rational,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVertex {
    kind: RawKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    position_rad: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    position: Option<[f64; 2]>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPolygon {
    class: PolygonClass,
    vertices: Vec<RawVertex>,
    #[serde(default)]
    placement: Placement,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rotation_rad: Option<f64>,
}

impl RawPolygon {
    fn into_spec(self) -> Result<PolygonSpec, PolygonError> {
        let mut vertices = Vec::with_capacity(self.vertices.len());
        for (i, v) in self.vertices.into_iter().enumerate() {
            let index = i + 1;
            let bad = |reason: &str| PolygonError::MalformedVertex {
                vertex: index,
                reason: reason.to_string(),
            };
            let spec = match v.kind {
                RawKind::Ideal => {
                    if v.lambda.is_some() || v.position.is_some() {
                        return Err(bad("ideal vertices take only position_rad"));
                    }
                    match v.position_rad {
                        Some(a) if !a.is_finite() => return Err(bad("position_rad must be finite")),
                        a => VertexSpec::Ideal {
                            position: a.map(BoundaryAngle::new),
                        },
                    }
                }
                RawKind::Rational => {
                    if v.position_rad.is_some() {
                        return Err(bad("rational vertices take position, not position_rad"));
                    }
                    let l = v.lambda.ok_or_else(|| bad("rational vertices need lambda"))?;
                    if !(l.fract() == 0.0 && l >= 2.0 && l <= u32::MAX as f64) {
                        return Err(PolygonError::NonRationalAngle {
                            vertex: index,
                            lambda: l,
                        });
                    }
                    let position = match v.position {
                        None => None,
                        Some([re, im]) => {
                            Some(DiskPoint::new(re, im).map_err(|_| bad("position must lie inside the unit disk"))?)
                        }
                    };
                    VertexSpec::Rational {
                        lambda: l as u32,
                        position,
                    }
                }
            };
            vertices.push(spec);
        }
        Ok(PolygonSpec {
            class: self.class,
            vertices,
            placement: self.placement,
            rotation: self.rotation_rad.unwrap_or(0.0),
        })
    }

    fn from_spec(spec: &PolygonSpec) -> Self {
        let vertices = spec
            .vertices
            .iter()
            .map(|v| match *v {
                VertexSpec::Ideal { position } => RawVertex {
                    kind: RawKind::Ideal,
                    position_rad: position.map(|a| a.rad()),
                    lambda: None,
                    position: None,
                },
                VertexSpec::Rational { lambda, position } => RawVertex {
                    kind: RawKind::Rational,
                    position_rad: None,
                    lambda: Some(lambda as f64),
                    position: position.map(Into::into),
                },
            })
            .collect();
        RawPolygon {
            class: spec.class,
            vertices,
            placement: spec.placement,
            rotation_rad: (spec.rotation != 0.0).then_some(spec.rotation),
        }
    }
}
