use std::f64::consts::TAU;

use num_complex::Complex64;

use super::{BoundaryAngle, DirectedGeodesic, DiskPoint, Realization};

/// An isometry of the disk, `z ↦ (a w + b)/(c w + d)` with `w = z` or `w = z̄`.
///
/// Coefficients are kept up to scale and renormalized to unit determinant
/// after every composition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskIsometry {
    m: [Complex64; 4],
    reversing: bool,
}

/// Conjugacy type of an orientation-preserving isometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IsometryClass {
    Elliptic,
    Parabolic,
    /// Translation along the geodesic from `repelling` to `attracting`.
    Hyperbolic {
        repelling: BoundaryAngle,
        attracting: BoundaryAngle,
    },
    OrientationReversing,
}

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

impl DiskIsometry {
    pub fn identity() -> Self {
        DiskIsometry {
            m: [ONE, ZERO, ZERO, ONE],
            reversing: false,
        }
    }

    pub fn from_coefficients(a: Complex64, b: Complex64, c: Complex64, d: Complex64, reversing: bool) -> Self {
        DiskIsometry {
            m: [a, b, c, d],
            reversing,
        }
        .normalized()
    }

    pub fn rotation(angle: f64) -> Self {
        Self::from_coefficients(Complex64::from_polar(1.0, angle), ZERO, ZERO, ONE, false)
    }

    /// The isometry `z ↦ (z − p)/(1 − p̄ z)` sending `p` to the origin.
    pub fn to_origin(p: DiskPoint) -> Self {
        let p = p.to_complex();
        Self::from_coefficients(ONE, -p, -p.conj(), ONE, false)
    }

    /// Complex conjugation `z ↦ z̄`.
    pub fn conjugation() -> Self {
        DiskIsometry {
            m: [ONE, ZERO, ZERO, ONE],
            reversing: true,
        }
    }

    /// Reflection in the complete geodesic `g`.
    pub fn reflection(g: &DirectedGeodesic) -> Self {
        match g.realization() {
            Realization::Diameter { direction } => {
                Self::from_coefficients(direction * direction, ZERO, ZERO, ONE, true)
            }
            Realization::Circle { center, .. } => Self::from_coefficients(center, -ONE, ONE, -center.conj(), true),
        }
    }

    pub fn coefficients(&self) -> [Complex64; 4] {
        self.m
    }

    pub fn is_orientation_reversing(&self) -> bool {
        self.reversing
    }

    fn normalized(mut self) -> Self {
        let [a, b, c, d] = self.m;
        let s = (a * d - b * c).sqrt();
        if s.norm() > 0.0 && s.is_finite() {
            for x in self.m.iter_mut() {
                *x /= s;
            }
        }
        self
    }

    pub fn apply_complex(&self, z: Complex64) -> Complex64 {
        let w = if self.reversing { z.conj() } else { z };
        let [a, b, c, d] = self.m;
        (a * w + b) / (c * w + d)
    }

    pub fn apply(&self, p: DiskPoint) -> DiskPoint {
        let z = self.apply_complex(p.to_complex());
        let r = z.norm();
        if r < 1.0 {
            DiskPoint::new_unchecked(z.re, z.im)
        } else {
            let k = (1.0 - f64::EPSILON) / r;
            DiskPoint::new_unchecked(z.re * k, z.im * k)
        }
    }

    pub fn apply_boundary(&self, a: BoundaryAngle) -> BoundaryAngle {
        BoundaryAngle::from_complex(self.apply_complex(a.to_complex()))
    }

    /// Image of a geodesic; orientation of travel follows the endpoints.
    pub fn apply_geodesic(&self, g: &DirectedGeodesic) -> DirectedGeodesic {
        DirectedGeodesic::new_unchecked(self.apply_boundary(g.theta()), self.apply_boundary(g.phi()))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &DiskIsometry) -> DiskIsometry {
        let [a, b, c, d] = self.m;
        let [e, f, g, h] = if self.reversing {
            other.m.map(|x| x.conj())
        } else {
            other.m
        };
        DiskIsometry {
            m: [a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h],
            reversing: self.reversing ^ other.reversing,
        }
        .normalized()
    }

    pub fn inverse(&self) -> DiskIsometry {
        let [a, b, c, d] = self.m;
        let adj = [d, -b, -c, a];
        DiskIsometry {
            m: if self.reversing { adj.map(|x| x.conj()) } else { adj },
            reversing: self.reversing,
        }
        .normalized()
    }

    /// Largest displacement over 16 evenly spaced boundary points and the origin.
    pub fn distance_from(&self, other: &DiskIsometry) -> f64 {
        let mut worst = (self.apply_complex(ZERO) - other.apply_complex(ZERO)).norm();
        for j in 0..16 {
            let z = Complex64::from_polar(1.0, TAU * j as f64 / 16.0);
            worst = worst.max((self.apply_complex(z) - other.apply_complex(z)).norm());
        }
        worst
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        !self.reversing && self.distance_from(&DiskIsometry::identity()) <= tol
    }

    /// Classifies by the normalized trace; `tol` is the margin around `|tr| = 2`.
    pub fn classify(&self, tol: f64) -> IsometryClass {
        if self.reversing {
            return IsometryClass::OrientationReversing;
        }
        let [a, b, c, d] = self.normalized().m;
        let tr = (a + d).re.abs();
        if tr < 2.0 - tol {
            return IsometryClass::Elliptic;
        }
        if tr <= 2.0 + tol || c.norm() == 0.0 {
            return IsometryClass::Parabolic;
        }
        // Fixed points solve c z² + (d − a) z − b = 0.
        let p = d - a;
        let disc = (p * p + 4.0 * b * c).sqrt();
        let q = if (p.conj() * disc).re >= 0.0 {
            -0.5 * (p + disc)
        } else {
            -0.5 * (p - disc)
        };
        let z1 = q / c;
        let z2 = -b / q;
        let deriv = |z: Complex64| 1.0 / (c * z + d).norm_sqr();
        let (att, rep) = if deriv(z1) < deriv(z2) { (z1, z2) } else { (z2, z1) };
        IsometryClass::Hyperbolic {
            repelling: BoundaryAngle::from_complex(rep),
            attracting: BoundaryAngle::from_complex(att),
        }
    }
}
