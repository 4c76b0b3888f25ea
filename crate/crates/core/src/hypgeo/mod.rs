//! Primitives of the Poincaré disk model.
//!
//! Points of the open unit disk are [`DiskPoint`]s, points at infinity are
//! [`BoundaryAngle`]s, and complete oriented geodesics are
//! [`DirectedGeodesic`]s named by their two boundary intercepts. Most of the
//! heavy lifting happens in the hyperboloid (Lorentz) model, see [`lorentz`],
//! where reflections and intersections are linear algebra.

mod geodesic;
mod isometry;
pub mod lorentz;

use std::f64::consts::{PI, TAU};
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::{TAU_GEO, TAU_SEP};

pub use geodesic::{DirectedGeodesic, Realization};
pub use isometry::{DiskIsometry, IsometryClass};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeoError {
    /// The Cayley transform was given a point with non-positive imaginary part.
    #[error("point {0} is not in the upper half-plane")]
    NotInUpperHalfPlane(Complex64),
    /// A disk point was requested outside the open unit disk.
    #[error("point ({re}, {im}) is not inside the unit disk")]
    NotInDisk { re: f64, im: f64 },
    /// Two geodesic endpoints are closer than the separation tolerance.
    #[error("geodesic endpoints {theta} and {phi} are not separated")]
    DegenerateEndpoints { theta: f64, phi: f64 },
    /// A point expected on a geodesic is off it.
    #[error("point ({re}, {im}) does not lie on the geodesic")]
    PointNotOnGeodesic { re: f64, im: f64 },
}

/// A point of the open unit disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct DiskPoint {
    re: f64,
    im: f64,
}

impl DiskPoint {
    pub const ORIGIN: DiskPoint = DiskPoint { re: 0.0, im: 0.0 };

    pub fn new(re: f64, im: f64) -> Result<Self, GeoError> {
        if re.is_finite() && im.is_finite() && re * re + im * im < 1.0 {
            Ok(DiskPoint { re, im })
        } else {
            Err(GeoError::NotInDisk { re, im })
        }
    }

    pub fn from_complex(z: Complex64) -> Result<Self, GeoError> {
        Self::new(z.re, z.im)
    }

    /// Builds a point without checking; used where the disk bound holds by
    /// construction.
    pub(crate) fn new_unchecked(re: f64, im: f64) -> Self {
        DiskPoint { re, im }
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    pub fn conj(self) -> Self {
        DiskPoint {
            re: self.re,
            im: -self.im,
        }
    }
}

impl TryFrom<[f64; 2]> for DiskPoint {
    type Error = GeoError;
    fn try_from(v: [f64; 2]) -> Result<Self, GeoError> {
        DiskPoint::new(v[0], v[1])
    }
}

impl From<DiskPoint> for [f64; 2] {
    fn from(p: DiskPoint) -> Self {
        [p.re, p.im]
    }
}

impl fmt::Display for DiskPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.re, self.im)
    }
}

/// A point of the unit circle, stored as an angle in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(from = "f64", into = "f64")]
pub struct BoundaryAngle(f64);

impl BoundaryAngle {
    pub fn new(angle: f64) -> Self {
        let mut a = angle.rem_euclid(TAU);
        if a >= TAU {
            a = 0.0;
        }
        BoundaryAngle(a)
    }

    pub fn rad(self) -> f64 {
        self.0
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::from_polar(1.0, self.0)
    }

    pub fn from_complex(z: Complex64) -> Self {
        BoundaryAngle::new(z.im.atan2(z.re))
    }

    /// Reflection of the angle across the real axis.
    pub fn conj(self) -> Self {
        BoundaryAngle::new(-self.0)
    }
}

impl From<f64> for BoundaryAngle {
    fn from(a: f64) -> Self {
        BoundaryAngle::new(a)
    }
}

impl From<BoundaryAngle> for f64 {
    fn from(a: BoundaryAngle) -> Self {
        a.0
    }
}

impl fmt::Display for BoundaryAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Cayley transform `z ↦ (z − i)/(z + i)` from the upper half-plane to the disk.
pub fn cayley_to_disk(z: Complex64) -> Result<DiskPoint, GeoError> {
    if !(z.im > 0.0) || !z.re.is_finite() || !z.im.is_finite() {
        return Err(GeoError::NotInUpperHalfPlane(z));
    }
    let i = Complex64::i();
    let w = (z - i) / (z + i);
    DiskPoint::from_complex(w)
}

/// Builds the oriented geodesic from `theta` to `phi`.
pub fn geodesic_from_endpoints(theta: BoundaryAngle, phi: BoundaryAngle) -> Result<DirectedGeodesic, GeoError> {
    DirectedGeodesic::new(theta, phi, TAU_SEP)
}

/// Hyperbolic distance in the metric `4|dz|²/(1 − |z|²)²`.
pub fn hyp_distance(p: DiskPoint, q: DiskPoint) -> f64 {
    let dz = p.to_complex() - q.to_complex();
    let denom = ((1.0 - p.norm_sqr()) * (1.0 - q.norm_sqr())).sqrt();
    2.0 * (dz.norm() / denom).asinh()
}

/// Reflects `subject` in the complete geodesic `mirror`, preserving the
/// direction of travel through the boundary map.
pub fn reflect_geodesic(mirror: &DirectedGeodesic, subject: &DirectedGeodesic) -> DirectedGeodesic {
    let n = mirror.normal();
    let t = lorentz::reflect(n, lorentz::null_vector(subject.theta()));
    let p = lorentz::reflect(n, lorentz::null_vector(subject.phi()));
    DirectedGeodesic::new_unchecked(lorentz::null_angle(t), lorentz::null_angle(p))
}

/// Reflects an interior point in the geodesic `mirror`.
pub fn reflect_point(mirror: &DirectedGeodesic, p: DiskPoint) -> DiskPoint {
    lorentz::to_disk(lorentz::reflect(mirror.normal(), lorentz::lift(p)))
}

/// Circular distance between two boundary angles, in `[0, π]`.
pub fn boundary_distance(a: BoundaryAngle, b: BoundaryAngle) -> f64 {
    let d = (a.rad() - b.rad()).abs().rem_euclid(TAU);
    d.min(TAU - d)
}

/// Unsigned angle at `p` between the directions of travel of `g1` and `g2`.
pub fn angle_at(g1: &DirectedGeodesic, g2: &DirectedGeodesic, p: DiskPoint) -> Result<f64, GeoError> {
    for g in [g1, g2] {
        if !g.contains(p, TAU_GEO) {
            return Err(GeoError::PointNotOnGeodesic { re: p.re, im: p.im });
        }
    }
    let t1 = g1.tangent_at(p);
    let t2 = g2.tangent_at(p);
    let c = (t1.re * t2.re + t1.im * t2.im).clamp(-1.0, 1.0);
    let s = t1.re * t2.im - t1.im * t2.re;
    Ok(s.abs().atan2(c).clamp(0.0, PI))
}
