//! Concrete placements of polygon specifications in the disk.

use std::f64::consts::TAU;

use super::checked::{interior_angle, Vertex};
use super::{Placement, PolygonError, PolygonSpec, VertexSpec};
use crate::hypgeo::lorentz::{self, Vec3};
use crate::hypgeo::{BoundaryAngle, DiskIsometry, DiskPoint};

const BRACKET: (f64, f64) = (0.1, 20.0);
const MAX_BISECTIONS: usize = 200;

pub(crate) fn realize(spec: &PolygonSpec, ang_tol: f64) -> Result<Vec<Vertex>, PolygonError> {
    match spec.placement {
        Placement::Explicit => explicit(spec),
        Placement::RegularSymmetric => symmetric(spec, ang_tol),
    }
}

fn explicit(spec: &PolygonSpec) -> Result<Vec<Vertex>, PolygonError> {
    spec.vertices
        .iter()
        .enumerate()
        .map(|(i, v)| match *v {
            VertexSpec::Ideal { position: Some(a) } => Ok(Vertex::Ideal(a)),
            VertexSpec::Rational { position: Some(p), .. } => Ok(Vertex::Interior(p)),
            _ => Err(PolygonError::MissingPosition { vertex: i + 1 }),
        })
        .collect()
}

fn symmetric(spec: &PolygonSpec, ang_tol: f64) -> Result<Vec<Vertex>, PolygonError> {
    let k = spec.k();
    let first = spec.vertices[0].without_position();
    if spec.vertices.iter().all(|v| v.without_position() == first) {
        return regular(k, first.lambda(), spec.rotation, ang_tol);
    }
    if k == 3 {
        return triangle(spec);
    }
    if k.is_multiple_of(2) {
        let (a, b) = (spec.vertices[0].without_position(), spec.vertices[1].without_position());
        let alternating = a.is_ideal() != b.is_ideal()
            && spec
                .vertices
                .iter()
                .enumerate()
                .all(|(i, v)| v.without_position() == if i % 2 == 0 { a } else { b });
        if alternating {
            let lambda = a.lambda().or(b.lambda()).expect("one kind is rational");
            return alternating_template(k, lambda, a.is_ideal(), spec.rotation, ang_tol);
        }
    }
    Err(PolygonError::UnsupportedPlacement(
        "symmetric placement covers regular polygons, triangles and alternating ideal/rational \
         templates; use explicit placement"
            .into(),
    ))
}

/// Bisection on hyperbolic radius for a decreasing angle function.
fn bisect<F>(target: f64, ang_tol: f64, angle: F) -> Result<f64, PolygonError>
where
    F: Fn(f64) -> f64,
{
    let (mut lo, mut hi) = BRACKET;
    let (a_lo, a_hi) = (angle(lo), angle(hi));
    if !(a_lo > target && a_hi < target) {
        return Err(PolygonError::BisectionFailure(format!(
            "target angle {target} outside [{a_hi}, {a_lo}] on the radius bracket"
        )));
    }
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if angle(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let r = 0.5 * (lo + hi);
    let err = (angle(r) - target).abs();
    if err > ang_tol {
        return Err(PolygonError::BisectionFailure(format!(
            "angle error {err} after bisection"
        )));
    }
    Ok(r)
}

fn point_at(radius: f64, angle: f64) -> DiskPoint {
    let rho = (radius / 2.0).tanh();
    DiskPoint::new_unchecked(rho * angle.cos(), rho * angle.sin())
}

fn angle_at_vertex(prev: Vec3, at: Vec3, next: Vec3) -> f64 {
    let a = lorentz::normal_through(prev, at);
    let b = lorentz::normal_through(at, next);
    interior_angle(a, b)
}

fn regular(k: usize, lambda: Option<u32>, rotation: f64, ang_tol: f64) -> Result<Vec<Vertex>, PolygonError> {
    let step = TAU / k as f64;
    match lambda {
        None => Ok((0..k)
            .map(|j| Vertex::Ideal(BoundaryAngle::new(rotation + step * j as f64)))
            .collect()),
        Some(l) => {
            let target = std::f64::consts::PI / l as f64;
            let angle = |r: f64| {
                let v = |j: f64| lorentz::lift(point_at(r, step * j));
                angle_at_vertex(v(-1.0), v(0.0), v(1.0))
            };
            let r = bisect(target, ang_tol, angle)?;
            Ok((0..k)
                .map(|j| Vertex::Interior(point_at(r, rotation + step * j as f64)))
                .collect())
        }
    }
}

fn alternating_template(
    k: usize,
    lambda: u32,
    ideal_first: bool,
    rotation: f64,
    ang_tol: f64,
) -> Result<Vec<Vertex>, PolygonError> {
    let step = TAU / k as f64;
    let target = std::f64::consts::PI / lambda as f64;
    let angle = |r: f64| {
        let prev = lorentz::null_vector(BoundaryAngle::new(-step));
        let next = lorentz::null_vector(BoundaryAngle::new(step));
        angle_at_vertex(prev, lorentz::lift(point_at(r, 0.0)), next)
    };
    let r = bisect(target, ang_tol, angle)?;
    Ok((0..k)
        .map(|j| {
            let a = rotation + step * j as f64;
            if (j % 2 == 0) == ideal_first {
                Vertex::Ideal(BoundaryAngle::new(a))
            } else {
                Vertex::Interior(point_at(r, a))
            }
        })
        .collect())
}

/// Triangle with prescribed angles from the Gram matrix of its side normals,
/// then moved so its vertex barycenter sits at the origin and `v₁` at the
/// rotation angle.
fn triangle(spec: &PolygonSpec) -> Result<Vec<Vertex>, PolygonError> {
    let alpha: Vec<f64> = spec.vertices.iter().map(|v| v.interior_angle()).collect();
    let ideal: Vec<bool> = spec.vertices.iter().map(|v| v.is_ideal()).collect();
    let r = (0..3)
        .find(|&i| !ideal[i])
        .expect("mixed or compact triangle has a rational vertex");
    // Normals nᵢ with ⟨nᵢ, nᵢ₊₁⟩ = −cos αᵢ; built starting from the sides at vertex r.
    let g01 = -alpha[r].cos();
    let g12 = -alpha[(r + 1) % 3].cos();
    let g20 = -alpha[(r + 2) % 3].cos();
    let s = (1.0 - g01 * g01).sqrt();
    let m0 = [1.0, 0.0, 0.0];
    let m1 = [g01, s, 0.0];
    let x = g20;
    let y = (g12 - g01 * x) / s;
    let zz = x * x + y * y - 1.0;
    if !(zz > 0.0) {
        return Err(PolygonError::NoSuchPolygon(format!(
            "no hyperbolic triangle with angles {alpha:?}"
        )));
    }
    for z in [zz.sqrt(), -zz.sqrt()] {
        let m2 = [x, y, z];
        let mut n = [[0.0; 3]; 3];
        n[r] = m0;
        n[(r + 1) % 3] = m1;
        n[(r + 2) % 3] = m2;
        // Vertex i lies on sides i and i+1 (0-based).
        let verts: Vec<Vec3> = (0..3).map(|i| lorentz::meet(n[i], n[(i + 1) % 3])).collect();
        let inside = (0..3).all(|i| {
            let v = verts[i];
            let q = lorentz::dot(v, v);
            let kind_ok = if ideal[i] {
                q.abs() < 1e-9 * v[2] * v[2]
            } else {
                q < 0.0
            };
            kind_ok && lorentz::dot(v, n[(i + 2) % 3]) < 0.0
        });
        if !inside {
            continue;
        }
        let mut out: Vec<Vertex> = (0..3).map(|i| Vertex::from_lorentz(verts[i], ideal[i])).collect();
        let ccw = lorentz::dot(lorentz::normal_through(verts[2], verts[0]), n[0]) > 0.0;
        if !ccw {
            let c = DiskIsometry::conjugation();
            out = out.iter().map(|v| v.map(&c)).collect();
        }
        return Ok(recenter(out, spec.rotation));
    }
    Err(PolygonError::NoSuchPolygon(format!(
        "triangle construction failed for angles {alpha:?}"
    )))
}

fn recenter(vertices: Vec<Vertex>, rotation: f64) -> Vec<Vertex> {
    let mut acc = [0.0; 3];
    for v in &vertices {
        let l = v.lorentz();
        acc = lorentz::add(acc, lorentz::scale(l, 1.0 / l[2]));
    }
    let c = lorentz::to_disk(lorentz::normalize_timelike(acc));
    let t = DiskIsometry::to_origin(c);
    let moved: Vec<Vertex> = vertices.iter().map(|v| v.map(&t)).collect();
    let z = moved[0].to_complex();
    let rot = DiskIsometry::rotation(rotation - z.im.atan2(z.re));
    moved.iter().map(|v| v.map(&rot)).collect()
}

/// Triangle with `v₁, v₂` ideal at angles `0` and `2π/3` and `v₃` on the ray
/// at angle `4π/3`, placed so the angle at `v₃` is `π/lambda`.
pub fn ray_triangle(lambda: u32, ang_tol: f64) -> Result<PolygonSpec, PolygonError> {
    if lambda < 2 {
        return Err(PolygonError::NonRationalAngle {
            vertex: 3,
            lambda: lambda as f64,
        });
    }
    let a1 = BoundaryAngle::new(0.0);
    let a2 = BoundaryAngle::new(TAU / 3.0);
    let dir = 2.0 * TAU / 3.0;
    let target = std::f64::consts::PI / lambda as f64;
    let angle = |r: f64| {
        angle_at_vertex(
            lorentz::null_vector(a2),
            lorentz::lift(point_at(r, dir)),
            lorentz::null_vector(a1),
        )
    };
    let r = bisect(target, ang_tol, angle)?;
    Ok(PolygonSpec {
        class: super::PolygonClass::SemiIdealRational,
        vertices: vec![
            VertexSpec::Ideal { position: Some(a1) },
            VertexSpec::Ideal { position: Some(a2) },
            VertexSpec::rational_at(lambda, point_at(r, dir)),
        ],
        placement: Placement::Explicit,
        rotation: 0.0,
    })
}
