//! Closed-form bounce in a frame adapted to the reflecting side.
//!
//! Rotating the disk so that the side's endpoints sit at `±ω`, the
//! reflection acts on boundary angles by `tan(x′/2) = e^{−2r₀} cot(x/2)`
//! with `e^{r₀} = cot(ω/2)`. The outgoing terminal angle is recovered from
//! the incoming pair through `M = cot((φ − θ)/2)`.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::hypgeo::{BoundaryAngle, DirectedGeodesic};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BounceFrame {
    /// Rotation taking the frame to the disk.
    pub alpha: f64,
    /// Half the angular width of the side's boundary arc.
    pub omega: f64,
    pub r0: f64,
    /// Incoming endpoints in frame coordinates, in `(−π, π]`.
    pub theta: f64,
    pub phi: f64,
    pub m: f64,
    pub m_prime: f64,
}

fn wrap(a: f64) -> f64 {
    let r = (a + PI).rem_euclid(TAU) - PI;
    if r <= -PI {
        r + TAU
    } else {
        r
    }
}

fn cot(x: f64) -> f64 {
    x.cos() / x.sin()
}

impl BounceFrame {
    /// Frame for reflecting `incoming` in `side`. The side's Lorentz normal
    /// points at the middle of the cut-off boundary arc.
    pub fn new(side: &DirectedGeodesic, incoming: &DirectedGeodesic) -> Self {
        let n = side.normal();
        let rho = n[0].hypot(n[1]);
        let alpha = n[1].atan2(n[0]);
        let omega = (n[2] / rho).clamp(-1.0, 1.0).acos();
        let r0 = cot(omega / 2.0).ln();
        let theta = wrap(incoming.theta().rad() - alpha);
        let phi = wrap(incoming.phi().rad() - alpha);
        let m = cot((phi - theta) / 2.0);
        let (s, c) = (theta / 2.0).sin_cos();
        let m_prime = -m * (2.0 * r0).exp() * (s * s + (-4.0 * r0).exp() * c * c) - (2.0 * r0).sinh() * theta.sin();
        BounceFrame {
            alpha,
            omega,
            r0,
            theta,
            phi,
            m,
            m_prime,
        }
    }

    /// Image of a frame angle under the reflection.
    pub fn reflect_angle(&self, x: f64) -> f64 {
        let (s, c) = (x / 2.0).sin_cos();
        2.0 * ((-2.0 * self.r0).exp() * c).atan2(s)
    }

    /// Outgoing endpoints `(θ′, φ′)` in frame coordinates.
    pub fn outgoing(&self) -> (f64, f64) {
        let t = self.reflect_angle(self.theta);
        let p = t + 2.0 * 1f64.atan2(self.m_prime);
        (t, wrap(p))
    }

    /// Outgoing endpoints as disk angles.
    pub fn outgoing_angles(&self) -> (BoundaryAngle, BoundaryAngle) {
        let (t, p) = self.outgoing();
        ((t + self.alpha).into(), (p + self.alpha).into())
    }
}

/// Outgoing endpoints of `incoming` reflected in `side`, via the frame formulas.
pub fn frame_bounce(side: &DirectedGeodesic, incoming: &DirectedGeodesic) -> (BoundaryAngle, BoundaryAngle) {
    BounceFrame::new(side, incoming).outgoing_angles()
}
