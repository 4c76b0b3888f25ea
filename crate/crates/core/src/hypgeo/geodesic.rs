use std::f64::consts::PI;

use num_complex::Complex64;

use super::lorentz::{self, Vec3};
use super::{boundary_distance, BoundaryAngle, DiskPoint, GeoError};

/// Euclidean shape of a geodesic in the disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Realization {
    /// A diameter, with the unit direction of travel.
    Diameter { direction: Complex64 },
    /// An arc of a circle orthogonal to the unit circle.
    Circle { center: Complex64, radius: f64 },
}

/// An oriented complete geodesic from `theta` to `phi`.
///
/// The endpoint pair is authoritative; the Lorentz normal and the Euclidean
/// realization are derived from it at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectedGeodesic {
    theta: BoundaryAngle,
    phi: BoundaryAngle,
    normal: Vec3,
    realization: Realization,
}

impl DirectedGeodesic {
    pub fn new(theta: BoundaryAngle, phi: BoundaryAngle, sep: f64) -> Result<Self, GeoError> {
        if !(boundary_distance(theta, phi) > sep) {
            return Err(GeoError::DegenerateEndpoints {
                theta: theta.rad(),
                phi: phi.rad(),
            });
        }
        Ok(Self::new_unchecked(theta, phi))
    }

    pub(crate) fn new_unchecked(theta: BoundaryAngle, phi: BoundaryAngle) -> Self {
        let normal = lorentz::normal_through(lorentz::null_vector(theta), lorentz::null_vector(phi));
        let a = theta.to_complex();
        let b = phi.to_complex();
        let realization = if boundary_distance(theta, phi) > PI - 1e-12 {
            let d = b - a;
            Realization::Diameter {
                direction: d / d.norm(),
            }
        } else {
            let delta = phi.rad() - theta.rad();
            Realization::Circle {
                center: (a + b) / (1.0 + delta.cos()),
                radius: (delta / 2.0).tan().abs(),
            }
        };
        DirectedGeodesic {
            theta,
            phi,
            normal,
            realization,
        }
    }

    /// The geodesic `{⟨n, x⟩ = 0}`, oriented so that `⟨n, x⟩ > 0` is on its right.
    pub fn from_normal(n: Vec3) -> Self {
        let (a, b) = lorentz::endpoints(n);
        let m = lorentz::normal_through(lorentz::null_vector(a), lorentz::null_vector(b));
        if lorentz::dot(m, n) > 0.0 {
            Self::new_unchecked(a, b)
        } else {
            Self::new_unchecked(b, a)
        }
    }

    pub fn theta(&self) -> BoundaryAngle {
        self.theta
    }

    pub fn phi(&self) -> BoundaryAngle {
        self.phi
    }

    /// Unit spacelike normal; positive on the right of the direction of travel.
    pub fn normal(&self) -> Vec3 {
        self.normal
    }

    pub fn realization(&self) -> Realization {
        self.realization
    }

    pub fn reversed(&self) -> Self {
        Self::new_unchecked(self.phi, self.theta)
    }

    /// Mirror image under complex conjugation.
    pub fn conj(&self) -> Self {
        Self::new_unchecked(self.theta.conj(), self.phi.conj())
    }

    /// Signed Lorentz side value `⟨P, n⟩`; `sinh` of the signed distance to the geodesic.
    pub fn side_value(&self, p: DiskPoint) -> f64 {
        lorentz::dot(lorentz::lift(p), self.normal)
    }

    /// Whether `p` lies on the geodesic, with `tol` relative to the lift's size.
    pub fn contains(&self, p: DiskPoint, tol: f64) -> bool {
        let v = lorentz::lift(p);
        lorentz::dot(v, self.normal).abs() <= tol * v[2]
    }

    fn scale_factor(&self) -> f64 {
        let nt = lorentz::null_vector(self.theta);
        let np = lorentz::null_vector(self.phi);
        (-2.0 * lorentz::dot(nt, np)).sqrt()
    }

    /// Point at signed arclength `s` along the geodesic, on the hyperboloid.
    pub fn lorentz_point_at(&self, s: f64) -> Vec3 {
        let nt = lorentz::null_vector(self.theta);
        let np = lorentz::null_vector(self.phi);
        let k = 1.0 / self.scale_factor();
        lorentz::add(lorentz::scale(nt, (-s).exp() * k), lorentz::scale(np, s.exp() * k))
    }

    pub fn point_at(&self, s: f64) -> DiskPoint {
        lorentz::to_disk(self.lorentz_point_at(s))
    }

    /// Arclength parameter of the foot of the perpendicular from `p`.
    pub fn param_of(&self, p: DiskPoint) -> f64 {
        self.param_of_lorentz(lorentz::lift(p))
    }

    pub fn param_of_lorentz(&self, v: Vec3) -> f64 {
        let a = lorentz::dot(v, lorentz::null_vector(self.theta));
        let b = lorentz::dot(v, lorentz::null_vector(self.phi));
        0.5 * (a / b).ln()
    }

    /// Unit Euclidean direction of travel at the point of the geodesic nearest `p`.
    pub fn tangent_at(&self, p: DiskPoint) -> Complex64 {
        let s = self.param_of(p);
        let nt = lorentz::null_vector(self.theta);
        let np = lorentz::null_vector(self.phi);
        let k = 1.0 / self.scale_factor();
        let pos = self.lorentz_point_at(s);
        let vel = lorentz::add(lorentz::scale(nt, -(-s).exp() * k), lorentz::scale(np, s.exp() * k));
        let w = 1.0 + pos[2];
        let dz = Complex64::new(
            vel[0] / w - pos[0] * vel[2] / (w * w),
            vel[1] / w - pos[1] * vel[2] / (w * w),
        );
        dz / dz.norm()
    }
}
