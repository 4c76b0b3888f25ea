//! Polygon specifications, validation, area and unfolding.

mod checked;
mod realize;
mod spec;

use serde::Serialize;
use thiserror::Error;

use crate::config::Tolerances;
use crate::hypgeo::{DirectedGeodesic, DiskIsometry};

pub use checked::{CheckedPolygon, Side, Vertex};
pub use realize::ray_triangle;
pub use spec::{Placement, PolygonClass, PolygonSpec, VertexSpec};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolygonError {
    /// Fewer than three vertices.
    #[error("a polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    /// The declared class disagrees with the vertex kinds.
    #[error("class {declared} does not match vertex kinds (implies {implied})")]
    ClassMismatch {
        declared: &'static str,
        implied: &'static str,
    },
    /// A rational vertex with `λ < 2` or non-integer `λ`.
    #[error("vertex {vertex}: lambda {lambda} is not an integer >= 2")]
    NonRationalAngle { vertex: usize, lambda: f64 },
    /// Gauss–Bonnet area is not positive.
    #[error("Gauss-Bonnet area {area} is not positive")]
    DegenerateArea { area: f64 },
    #[error("polygon is not convex: {0}")]
    NotConvex(String),
    /// A realized interior angle differs from the prescribed `π/λ`.
    #[error("vertex {vertex}: realized angle {realized} differs from {expected}")]
    AngleMismatch {
        vertex: usize,
        expected: f64,
        realized: f64,
    },
    /// `build_regular` was asked for a polygon of non-positive area.
    #[error("no such polygon: {0}")]
    NoSuchPolygon(String),
    #[error("bisection failed: {0}")]
    BisectionFailure(String),
    #[error("vertex {vertex}: explicit placement needs a position")]
    MissingPosition { vertex: usize },
    #[error("vertex {vertex}: {reason}")]
    MalformedVertex { vertex: usize, reason: String },
    #[error("unsupported placement: {0}")]
    UnsupportedPlacement(String),
    #[error("side label {label} outside 1..={k}")]
    InvalidSide { label: usize, k: usize },
    /// Consecutive equal labels in an unfolding word.
    #[error("immediate repetition of label {label} at position {position}")]
    ImmediateRepetition { position: usize, label: usize },
    #[error("empty unfolding word")]
    EmptyWord,
    #[error("invalid tolerances")]
    InvalidTolerances,
    /// Malformed polygon specification text.
    #[error("cannot parse polygon spec: {0}")]
    Parse(String),
}

/// Validates a specification with the default tolerances.
pub fn validate(spec: &PolygonSpec) -> Result<CheckedPolygon, PolygonError> {
    validate_with(spec, &Tolerances::default())
}

pub fn validate_with(spec: &PolygonSpec, tol: &Tolerances) -> Result<CheckedPolygon, PolygonError> {
    if !tol.is_valid() {
        return Err(PolygonError::InvalidTolerances);
    }
    spec.check()?;
    let vertices = realize::realize(spec, tol.ang)?;
    CheckedPolygon::from_vertices(spec.clone(), vertices, *tol)
}

/// Regular `k`-gon centered at the origin with `v₁` on the positive real axis.
pub fn build_regular(k: usize, vertex: VertexSpec) -> Result<CheckedPolygon, PolygonError> {
    build_regular_rotated(k, vertex, 0.0)
}

pub fn build_regular_rotated(k: usize, vertex: VertexSpec, rotation: f64) -> Result<CheckedPolygon, PolygonError> {
    let mut spec = PolygonSpec::regular(k, vertex);
    spec.rotation = rotation;
    if k >= 3 && spec.area() <= 0.0 {
        return Err(PolygonError::NoSuchPolygon(format!(
            "regular {k}-gon with angle {} has area {}",
            vertex.interior_angle(),
            spec.area()
        )));
    }
    validate(&spec)
}

pub fn area(p: &CheckedPolygon) -> f64 {
    p.area()
}

/// Image of a polygon under an isometry; side `j` of the copy is the image
/// of side `j` of the original.
#[derive(Debug, Clone)]
pub struct PolygonCopy {
    pub vertices: Vec<Vertex>,
    pub sides: Vec<DirectedGeodesic>,
    pub isometry: DiskIsometry,
}

impl PolygonCopy {
    pub fn new(p: &CheckedPolygon, isometry: DiskIsometry) -> Self {
        PolygonCopy {
            vertices: p.vertices().iter().map(|v| v.map(&isometry)).collect(),
            sides: p.sides().iter().map(|s| isometry.apply_geodesic(&s.geodesic)).collect(),
            isometry,
        }
    }

    pub fn side(&self, label: usize) -> &DirectedGeodesic {
        &self.sides[label - 1]
    }
}

/// Reflects `p` in its side `label`.
pub fn reflect_polygon(p: &CheckedPolygon, label: usize) -> Result<(PolygonCopy, DiskIsometry), PolygonError> {
    let r = p.reflection(label)?;
    Ok((PolygonCopy::new(p, r), r))
}

/// Cumulative isometries `R_{w₁} ∘ … ∘ R_{wₜ}` of an unfolding word.
pub fn unfolding_isometries(p: &CheckedPolygon, word: &[usize]) -> Result<Vec<DiskIsometry>, PolygonError> {
    if word.is_empty() {
        return Err(PolygonError::EmptyWord);
    }
    let mut out = Vec::with_capacity(word.len());
    let mut g = DiskIsometry::identity();
    for (t, &label) in word.iter().enumerate() {
        if t > 0 && word[t - 1] == label {
            return Err(PolygonError::ImmediateRepetition { position: t, label });
        }
        g = g.compose(&p.reflection(label)?);
        out.push(g);
    }
    Ok(out)
}

/// Copies of `p` along an unfolding word.
///
/// Copy `t` is reflected in the image of side `word[t]` carried by copy
/// `t − 1`, so consecutive copies share that side.
pub fn unfold(p: &CheckedPolygon, word: &[usize]) -> Result<Vec<PolygonCopy>, PolygonError> {
    Ok(unfolding_isometries(p, word)?
        .into_iter()
        .map(|g| PolygonCopy::new(p, g))
        .collect())
}

/// Summary used in reports.
#[derive(Debug, Clone, Serialize)]
pub struct PolygonSummary {
    pub class: &'static str,
    pub k: usize,
    pub lambdas: Vec<Option<u32>>,
    pub angles_rad: Vec<f64>,
    pub area: f64,
    pub vertices: Vec<Vertex>,
}

impl PolygonSummary {
    pub fn of(p: &CheckedPolygon) -> Self {
        PolygonSummary {
            class: p.spec().class.name(),
            k: p.k(),
            lambdas: p.spec().vertices.iter().map(|v| v.lambda()).collect(),
            angles_rad: (1..=p.k()).map(|i| p.realized_angle(i)).collect(),
            area: p.area(),
            vertices: p.vertices().to_vec(),
        }
    }
}
