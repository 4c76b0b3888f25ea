use serde::{Deserialize, Serialize};

/// Tolerance for algebraic identities (reflection involution, circle orthogonality).
pub const TAU_GEO: f64 = 1e-12;
/// Minimal angular separation of two boundary points treated as distinct.
pub const TAU_SEP: f64 = 1e-9;
/// Tolerance on realized interior angles.
pub const TAU_ANG: f64 = 1e-9;
/// Hyperbolic distance below which a boundary hit counts as a vertex hit.
pub const TAU_VERT: f64 = 1e-9;

/// Numeric tolerances shared by geometry and billiard code.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub geo: f64,
    pub sep: f64,
    pub ang: f64,
    pub vert: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            geo: TAU_GEO,
            sep: TAU_SEP,
            ang: TAU_ANG,
            vert: TAU_VERT,
        }
    }
}

impl Tolerances {
    /// Returns `true` when every tolerance is finite and strictly positive.
    pub fn is_valid(&self) -> bool {
        [self.geo, self.sep, self.ang, self.vert]
            .iter()
            .all(|t| t.is_finite() && *t > 0.0)
    }
}
