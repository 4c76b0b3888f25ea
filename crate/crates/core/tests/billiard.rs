mod common;

use hypbill::billiard::{
    arc_hausdorff, bounce, d_g, frame_bounce, random_arc, simulate, specular_angles, unbounce, BaseArc,
};
use hypbill::hypgeo::{boundary_distance, reflect_geodesic};
use hypbill::polygon::CheckedPolygon;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A random trajectory of `n` bounces, redrawn when it meets a vertex.
fn trajectory(p: &CheckedPolygon, n: usize, rng: &mut ChaCha8Rng) -> Vec<BaseArc> {
    loop {
        let start = random_arc(p, rng).unwrap();
        if let Ok(w) = simulate(p, start, n, 0) {
            return w.arcs;
        }
    }
}

fn unit(z: Complex64) -> Complex64 {
    z / z.norm()
}

#[test]
fn every_bounce_is_specular() {
    let mut rng = common::rng(1);
    for (name, p) in common::polygons() {
        for _ in 0..20 {
            let arcs = trajectory(&p, 30, &mut rng);
            for pair in arcs.windows(2) {
                let (before, after) = (&pair[0], &pair[1]);
                let (a, b) = specular_angles(&p, before, after).unwrap();
                assert!((a - b).abs() < 1e-9, "{name}: {a} vs {b}");

                // Mirroring the incoming direction in the side's tangent line
                // gives the outgoing direction.
                let at = before.hit_point;
                let ts = unit(p.side(before.hit_side).unwrap().geodesic.tangent_at(at));
                let tin = unit(before.geodesic.tangent_at(at));
                let tout = unit(after.geodesic.tangent_at(at));
                let mirrored = ts * ts * tin.conj();
                assert!((mirrored - tout).norm() < 1e-8, "{name}: {mirrored} vs {tout}");
                assert_eq!(after.from_side, before.hit_side);
                assert_ne!(after.hit_side, before.hit_side);
            }
        }
    }
}

#[test]
fn closed_form_frame_matches_lorentz_reflection() {
    let mut rng = common::rng(2);
    let polygons = common::polygons();
    for i in 0..1000 {
        let (name, p) = &polygons[i % polygons.len()];
        let arc = random_arc(p, &mut rng).unwrap();
        let side = &p.side(arc.hit_side).unwrap().geodesic;
        let (theta, phi) = frame_bounce(side, &arc.geodesic);
        let reflected = reflect_geodesic(side, &arc.geodesic);
        assert!(boundary_distance(theta, reflected.theta()) < 1e-9, "{name}: arc {i}");
        assert!(boundary_distance(phi, reflected.phi()) < 1e-9, "{name}: arc {i}");
        let next = bounce(p, &arc).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(boundary_distance(next.theta(), theta) < 1e-9);
    }
}

#[test]
fn coding_commutes_with_the_shift() {
    let mut rng = common::rng(3);
    for (name, p) in common::class_representatives() {
        let mut done = 0;
        while done < 100 {
            let start = random_arc(&p, &mut rng).unwrap();
            let Ok(w) = simulate(&p, start, 20, 0) else { continue };
            let Ok(next) = bounce(&p, &start) else { continue };
            let shifted = simulate(&p, next, 19, 0).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(shifted.code().letters(), &w.code().letters()[1..], "{name}");
            done += 1;
        }
    }
}

#[test]
fn bounce_and_unbounce_are_inverse() {
    let mut rng = common::rng(4);
    for (name, p) in common::polygons() {
        for _ in 0..50 {
            let arcs = trajectory(&p, 6, &mut rng);
            for pair in arcs.windows(2) {
                let back = unbounce(&p, &pair[1]).unwrap_or_else(|e| panic!("{name}: {e}"));
                assert!(d_g(&back, &pair[0]) < 1e-9, "{name}");
                assert_eq!(back.hit_side, pair[0].hit_side);
            }
        }
    }
}

#[test]
fn boundary_metric_on_arcs_is_a_metric() {
    let mut rng = common::rng(5);
    for (_, p) in common::polygons() {
        for _ in 0..125 {
            let a = random_arc(&p, &mut rng).unwrap();
            let b = random_arc(&p, &mut rng).unwrap();
            let c = random_arc(&p, &mut rng).unwrap();
            assert_eq!(d_g(&a, &a), 0.0);
            assert!(d_g(&a, &b) >= 0.0);
            assert_eq!(d_g(&a, &b), d_g(&b, &a));
            assert!(d_g(&a, &c) <= d_g(&a, &b) + d_g(&b, &c) + 1e-9);
            assert!(d_g(&a, &b) > 0.0 || (a.theta() == b.theta() && a.phi() == b.phi()));
        }
    }
}

/// Frozen bound on `arc_hausdorff / δ` for chords whose endpoints move by at
/// most `δ` in a compact polygon. Measured worst cases stay below 60; the
/// excess comes from chords passing close to a vertex.
const HAUSDORFF_SLOPE: f64 = 100.0;

#[test]
fn nearby_arcs_stay_close() {
    let mut rng = common::rng(6);
    let polygons = common::polygons();
    for name in ["compact", "triangle_237", "square_lambda3"] {
        let p = &polygons.iter().find(|(n, _)| *n == name).unwrap().1;
        for delta in [1e-2, 1e-3, 1e-4] {
            let mut worst: f64 = 0.0;
            let mut checked = 0;
            while checked < 2000 {
                let a = random_arc(p, &mut rng).unwrap();
                let dt = delta * rng.gen_range(-1.0..1.0);
                let dp = delta * rng.gen_range(-1.0..1.0);
                // Chords near a vertex may leave the polygon when moved.
                let Ok(b) = BaseArc::from_endpoints(p, a.theta().rad() + dt, a.phi().rad() + dp) else {
                    continue;
                };
                assert!(d_g(&a, &b) <= delta + 1e-12);
                worst = worst.max(arc_hausdorff(&a, &b, 64));
                checked += 1;
            }
            println!(
                "{name} δ = {delta:e}: worst Hausdorff {worst:.3e}, ratio {:.2}",
                worst / delta
            );
            assert!(worst <= HAUSDORFF_SLOPE * delta, "{name} δ = {delta}: {worst}");
        }
    }
}
