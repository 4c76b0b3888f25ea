use std::f64::consts::TAU;

use rand::Rng;

use crate::hypgeo::DiskPoint;
use crate::polygon::CheckedPolygon;
use crate::symdyn::{is_admissible_periodic, Letter, SubshiftSpec, Word};

use super::{BaseArc, BilliardError};

const ATTEMPTS: usize = 1000;

/// A random point of the polygon: vertex vectors mixed with exponential weights.
pub fn random_polygon_point<R: Rng + ?Sized>(p: &CheckedPolygon, rng: &mut R) -> DiskPoint {
    let weights: Vec<f64> = (0..p.k()).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    p.interior_point(&weights)
}

/// The base arc through a random interior point in a uniformly random
/// direction. Starts that hit a vertex or head to an ideal vertex are redrawn.
pub fn random_arc<R: Rng + ?Sized>(p: &CheckedPolygon, rng: &mut R) -> Result<BaseArc, BilliardError> {
    let mut last = BilliardError::NoIntersection;
    for _ in 0..ATTEMPTS {
        let x = random_polygon_point(p, rng);
        let psi = rng.gen_range(0.0..TAU);
        match BaseArc::through(p, x, psi) {
            Ok(a) => return Ok(a),
            Err(e) => last = e,
        }
    }
    Err(last)
}

/// A random admissible periodic word of period `q`, by rejection from
/// words without immediate repetitions.
pub fn random_admissible_periodic<R: Rng + ?Sized>(s: &SubshiftSpec, q: usize, rng: &mut R) -> Option<Word> {
    let k = s.k();
    if q < 2 || k < 2 {
        return None;
    }
    for _ in 0..ATTEMPTS {
        let mut letters: Vec<Letter> = Vec::with_capacity(q);
        letters.push(rng.gen_range(1..=k));
        while letters.len() < q {
            let prev = *letters.last().unwrap();
            let mut a = rng.gen_range(1..k);
            if a >= prev {
                a += 1;
            }
            letters.push(a);
        }
        if letters[0] == letters[q - 1] {
            continue;
        }
        let w = Word::new(letters).expect("letters are in 1..=k");
        if is_admissible_periodic(&w, s).map(|v| v.passes()).unwrap_or(false) {
            return Some(w);
        }
    }
    None
}
