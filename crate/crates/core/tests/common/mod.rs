//! Fixtures and brute-force oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::HashSet;

use hypbill::hypgeo::DiskPoint;
use hypbill::polygon::{build_regular, validate, CheckedPolygon, PolygonSpec, VertexSpec};
use hypbill::symdyn::{Letter, Presentation};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ideal(k: usize) -> CheckedPolygon {
    validate(&PolygonSpec::ideal(k)).unwrap()
}

pub fn triangle(lambdas: [Option<u32>; 3]) -> CheckedPolygon {
    validate(&PolygonSpec::triangle(lambdas)).unwrap()
}

/// One representative per polygon class.
pub fn class_representatives() -> Vec<(&'static str, CheckedPolygon)> {
    vec![
        ("ideal", ideal(3)),
        ("compact", triangle([Some(4); 3])),
        ("semi_ideal", triangle([Some(3), None, None])),
    ]
}

/// A broader mix of shapes for geometric checks.
pub fn polygons() -> Vec<(&'static str, CheckedPolygon)> {
    let mut v = class_representatives();
    v.extend([
        ("ideal_quadrilateral", ideal(4)),
        ("ideal_hexagon", ideal(6)),
        ("triangle_237", triangle([Some(2), Some(3), Some(7)])),
        ("square_lambda3", build_regular(4, VertexSpec::rational(3)).unwrap()),
        ("semi_ideal_quadrilateral", {
            let spec = PolygonSpec::symmetric(vec![
                VertexSpec::rational(3),
                VertexSpec::ideal(),
                VertexSpec::rational(3),
                VertexSpec::ideal(),
            ]);
            validate(&spec).unwrap()
        }),
    ]);
    v
}

/// A point of the disk with Euclidean radius below `r_max`.
pub fn disk_point<R: Rng>(rng: &mut R, r_max: f64) -> DiskPoint {
    let r = r_max * rng.gen::<f64>().sqrt();
    let t = rng.gen_range(0.0..std::f64::consts::TAU);
    DiskPoint::new(r * t.cos(), r * t.sin()).unwrap()
}

/// Every word over `1..=k` of length `n`, lexicographically.
pub fn all_words(k: Letter, n: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (1..=k).map(move |a| {
                    let mut w = w.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    out
}

/// Central windows `x_{−(m−1)} … x_{m−1}` of the periodic points whose
/// period is at most `max_period`, for `m = 1..=max_m`.
fn periodic_windows(p: &Presentation, max_period: usize, max_m: usize) -> Vec<Vec<Letter>> {
    let len = 2 * max_m - 1;
    let mut seen = HashSet::new();
    for q in 1..=max_period {
        for w in all_words(p.k(), q) {
            if !p.accepts_periodic(&w) {
                continue;
            }
            for r in 0..q {
                let window: Vec<Letter> = (0..len).map(|i| w[(r + i + q * len - (max_m - 1)) % q]).collect();
                seen.insert(window);
            }
        }
    }
    seen.into_iter().collect()
}

fn central(window: &[Letter], m: usize) -> &[Letter] {
    let c = window.len() / 2;
    &window[c + 1 - m..c + m]
}

/// One-sided exponent: the smallest over points `x` of `X` of the largest
/// `m ≤ max_m` such that some point of `Y` agrees with `x` on `|n| < m`.
fn directed_exponent(xs: &[Vec<Letter>], ys: &[Vec<Letter>], max_m: usize) -> usize {
    let sets: Vec<HashSet<&[Letter]>> = (0..=max_m)
        .map(|m| ys.iter().map(|y| central(y, m.max(1))).collect())
        .collect();
    xs.iter()
        .map(|x| {
            (1..=max_m)
                .take_while(|&m| sets[m].contains(central(x, m)))
                .last()
                .unwrap_or(0)
        })
        .min()
        .unwrap_or(max_m)
}

/// Hausdorff exponent between the periodic-point clouds of two shifts under
/// `d(x, y) = 2^{−m}`, `m` the largest with `x_n = y_n` for `|n| < m`.
/// `None` when the clouds agree through `max_m`.
pub fn cloud_exponent(x: &Presentation, y: &Presentation, max_period: usize, max_m: usize) -> Option<usize> {
    let xs = periodic_windows(x, max_period, max_m);
    let ys = periodic_windows(y, max_period, max_m);
    let m = directed_exponent(&xs, &ys, max_m).min(directed_exponent(&ys, &xs, max_m));
    (m < max_m).then_some(m)
}
