//! Hyperboloid model helpers.
//!
//! Vectors are `[x, y, t]` with the Lorentz form `⟨a, b⟩ = a₀b₀ + a₁b₁ − a₂b₂`.
//! Disk points lift to the upper sheet `⟨P, P⟩ = −1`, boundary points to null
//! vectors `(cos ψ, sin ψ, 1)`, and geodesics are represented by unit
//! spacelike normals `n` with the geodesic being `{⟨n, x⟩ = 0}`.

use num_complex::Complex64;

use super::{BoundaryAngle, DiskPoint};

pub type Vec3 = [f64; 3];

pub fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] - a[2] * b[2]
}

pub fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Multiplication by `diag(1, 1, −1)`.
pub fn flip(a: Vec3) -> Vec3 {
    [a[0], a[1], -a[2]]
}

pub fn scale(a: Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

pub fn add(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

/// Lift of a disk point to the hyperboloid.
pub fn lift(p: DiskPoint) -> Vec3 {
    let r2 = p.norm_sqr();
    let s = 1.0 / (1.0 - r2);
    [2.0 * p.re() * s, 2.0 * p.im() * s, (1.0 + r2) * s]
}

pub fn null_vector(a: BoundaryAngle) -> Vec3 {
    let (s, c) = a.rad().sin_cos();
    [c, s, 1.0]
}

pub fn null_angle(v: Vec3) -> BoundaryAngle {
    BoundaryAngle::new(v[1].atan2(v[0]))
}

/// Projects a future timelike vector (any positive scale) to the disk.
pub fn to_disk(v: Vec3) -> DiskPoint {
    let q = -dot(v, v);
    let w = if q > 0.0 { scale(v, 1.0 / q.sqrt()) } else { v };
    let s = 1.0 / (1.0 + w[2]);
    let (re, im) = (w[0] * s, w[1] * s);
    let r2 = re * re + im * im;
    if r2 < 1.0 {
        DiskPoint::new_unchecked(re, im)
    } else {
        let k = (1.0 - f64::EPSILON) / r2.sqrt();
        DiskPoint::new_unchecked(re * k, im * k)
    }
}

pub fn to_complex(v: Vec3) -> Complex64 {
    to_disk(v).to_complex()
}

/// Normalizes a future timelike vector to the hyperboloid.
pub fn normalize_timelike(v: Vec3) -> Vec3 {
    let q = -dot(v, v);
    let v = if v[2] < 0.0 { scale(v, -1.0) } else { v };
    scale(v, 1.0 / q.sqrt())
}

pub fn normalize_spacelike(v: Vec3) -> Vec3 {
    scale(v, 1.0 / dot(v, v).sqrt())
}

/// Unit normal of the geodesic through `a` then `b` (points or null vectors).
///
/// For the oriented line from `a` to `b`, `⟨n, x⟩ > 0` holds on its right.
pub fn normal_through(a: Vec3, b: Vec3) -> Vec3 {
    normalize_spacelike(cross(flip(a), flip(b)))
}

/// Reflection `x ↦ x − 2⟨x, n⟩n` in the geodesic with unit normal `n`.
pub fn reflect(n: Vec3, x: Vec3) -> Vec3 {
    let k = 2.0 * dot(x, n);
    [x[0] - k * n[0], x[1] - k * n[1], x[2] - k * n[2]]
}

/// Intersection of two geodesics given by normals, as a future vector.
///
/// The result is timelike when the geodesics cross, null when they are
/// asymptotic and spacelike when they are ultraparallel.
pub fn meet(n1: Vec3, n2: Vec3) -> Vec3 {
    let v = cross(flip(n1), flip(n2));
    if v[2] < 0.0 {
        scale(v, -1.0)
    } else {
        v
    }
}

/// The two boundary endpoints of the geodesic with unit normal `n`.
pub fn endpoints(n: Vec3) -> (BoundaryAngle, BoundaryAngle) {
    let rho = n[0].hypot(n[1]);
    let alpha = n[1].atan2(n[0]);
    let delta = (n[2] / rho).clamp(-1.0, 1.0).acos();
    (BoundaryAngle::new(alpha - delta), BoundaryAngle::new(alpha + delta))
}
