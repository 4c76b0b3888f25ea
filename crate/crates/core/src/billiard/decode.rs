use crate::hypgeo::{DirectedGeodesic, IsometryClass};
use crate::polygon::{unfolding_isometries, CheckedPolygon};
use crate::symdyn::{forbidden_set, is_admissible_periodic, letters_to_string, Letter, Verdict, Word};

use super::{simulate, BaseArc, BilliardError, TrajectoryWindow};

const TRACE_TOL: f64 = 1e-9;

/// Decodes the periodic code `word^∞` into one period of its trajectory.
///
/// The unfolding isometry `R_{a₀} ∘ … ∘ R_{a_{q−1}}` (of the doubled word
/// when `q` is odd) translates along the unfolded trajectory, so its axis
/// is the geodesic of arc 0.
pub fn decode_periodic(p: &CheckedPolygon, word: &Word) -> Result<TrajectoryWindow, BilliardError> {
    let spec = forbidden_set(p.spec())?;
    if let Verdict::Inadmissible(v) = is_admissible_periodic(word, &spec)? {
        return Err(BilliardError::NotAdmissible(v));
    }
    let letters = word.letters();
    let q = letters.len();
    let mut unfolded: Vec<usize> = letters.iter().map(|&a| a as usize).collect();
    if q % 2 == 1 {
        unfolded.extend_from_within(..);
    }
    let steps = unfolding_isometries(p, &unfolded)?;
    let g = *steps.last().expect("nonempty word");
    let axis = match g.classify(TRACE_TOL) {
        IsometryClass::Hyperbolic { repelling, attracting } => {
            DirectedGeodesic::new(repelling, attracting, p.tolerances().sep)?
        }
        other => return Err(BilliardError::NonHyperbolicHolonomy(format!("{other:?}"))),
    };
    // The axis crosses the copies along the unfolding; copy j carries the
    // trajectory from arc j, which codes the word rotated by j.
    let mut last = String::new();
    for j in 0..q {
        let pulled = if j == 0 {
            axis
        } else {
            steps[j - 1].inverse().apply_geodesic(&axis)
        };
        let arc = match BaseArc::from_geodesic(p, pulled) {
            Ok(a) => a,
            Err(e) => {
                last = e.to_string();
                continue;
            }
        };
        if arc.hit_side != letters[j] as usize {
            last = format!("arc {j} hits side {}", arc.hit_side);
            continue;
        }
        let window = match simulate(p, arc, q - 1, 0) {
            Ok(w) => w,
            Err(e) => {
                last = e.to_string();
                continue;
            }
        };
        let got: Vec<Letter> = window.arcs.iter().map(|a| a.hit_side as Letter).collect();
        if Word::new(got.clone())?.is_rotation_of(word) {
            return Ok(window);
        }
        last = letters_to_string(&got);
    }
    Err(BilliardError::DecodeMismatch {
        expected: letters_to_string(letters),
        got: last,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::billiard::bounce;
    use crate::hypgeo::boundary_distance;
    use crate::polygon::{build_regular, VertexSpec};

    #[test]
    fn ideal_triangle_period_three() {
        let p = build_regular(3, VertexSpec::ideal()).unwrap();
        let w = decode_periodic(&p, &Word::parse("123").unwrap()).unwrap();
        assert_eq!(w.len(), 3);
        let back = bounce(&p, &w.arcs[2]).unwrap();
        assert!(boundary_distance(back.theta(), w.arcs[0].theta()) < 1e-9);
        assert!(boundary_distance(back.phi(), w.arcs[0].phi()) < 1e-9);
    }

    #[test]
    fn inadmissible_and_excluded() {
        let p = build_regular(3, VertexSpec::ideal()).unwrap();
        assert!(matches!(
            decode_periodic(&p, &Word::parse("12").unwrap()),
            Err(BilliardError::NotAdmissible(_))
        ));
        assert!(matches!(
            decode_periodic(&p, &Word::parse("1123").unwrap()),
            Err(BilliardError::NotAdmissible(_))
        ));
    }

    #[test]
    fn lambda_four_triangle() {
        let p = crate::polygon::validate(&crate::polygon::PolygonSpec::triangle([Some(4); 3])).unwrap();
        let w = decode_periodic(&p, &Word::parse("1213").unwrap()).unwrap();
        assert_eq!(w.code().to_string(), ".1213");
        // (R₁R₂)² is the half-turn about v₁, so the holonomy of 12123 is a
        // glide reflection whose axis is the perpendicular from v₁ to side 3:
        // the closed geodesic runs into v₁.
        assert!(matches!(
            decode_periodic(&p, &Word::parse("12123").unwrap()),
            Err(BilliardError::DecodeMismatch { .. })
        ));
    }

    #[test]
    fn rotations_decode_to_the_same_orbit() {
        let p = build_regular(4, VertexSpec::rational(3)).unwrap();
        let word = Word::parse("1324").unwrap();
        let a = decode_periodic(&p, &word).unwrap();
        let b = decode_periodic(&p, &word.rotated(1)).unwrap();
        assert!(b.code().is_rotation_of(&word));
        assert!(a
            .arcs
            .iter()
            .any(|x| boundary_distance(x.theta(), b.arcs[0].theta()) < 1e-9
                && boundary_distance(x.phi(), b.arcs[0].phi()) < 1e-9));
    }
}
