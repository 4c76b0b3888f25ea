mod common;

use std::f64::consts::PI;

use hypbill::hypgeo::{
    boundary_distance, cayley_to_disk, geodesic_from_endpoints, hyp_distance, lorentz, reflect_geodesic, reflect_point,
    BoundaryAngle, DirectedGeodesic, DiskIsometry, DiskPoint,
};
use hypbill::polygon::{build_regular, validate, PolygonClass, PolygonError, PolygonSpec, VertexSpec};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;

fn point() -> impl Strategy<Value = DiskPoint> {
    (0.0..0.99f64, 0.0..(2.0 * PI)).prop_map(|(r, t)| DiskPoint::new(r * t.cos(), r * t.sin()).unwrap())
}

fn angle() -> impl Strategy<Value = BoundaryAngle> {
    (0.0..(2.0 * PI)).prop_map(BoundaryAngle::new)
}

fn geodesic() -> impl Strategy<Value = DirectedGeodesic> {
    (0.0..(2.0 * PI), 0.2..(2.0 * PI - 0.2))
        .prop_map(|(t, gap)| geodesic_from_endpoints(t.into(), (t + gap).into()).unwrap())
}

fn close(a: DiskPoint, b: DiskPoint, tol: f64) -> bool {
    (a.to_complex() - b.to_complex()).norm() <= tol
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 1000,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn hyperbolic_distance_is_a_metric(x in point(), y in point(), z in point()) {
        prop_assert!(hyp_distance(x, x).abs() < 1e-9);
        prop_assert!(hyp_distance(x, y) >= 0.0);
        prop_assert!((hyp_distance(x, y) - hyp_distance(y, x)).abs() < 1e-9);
        prop_assert!(hyp_distance(x, z) <= hyp_distance(x, y) + hyp_distance(y, z) + 1e-9);
    }

    #[test]
    fn boundary_distance_is_a_metric(a in angle(), b in angle(), c in angle()) {
        prop_assert_eq!(boundary_distance(a, a), 0.0);
        prop_assert!((0.0..=PI + 1e-12).contains(&boundary_distance(a, b)));
        prop_assert!((boundary_distance(a, b) - boundary_distance(b, a)).abs() < 1e-12);
        prop_assert!(boundary_distance(a, c) <= boundary_distance(a, b) + boundary_distance(b, c) + 1e-9);
    }

    #[test]
    fn reflection_is_an_involutive_isometry(g in geodesic(), x in point(), y in point()) {
        let rx = reflect_point(&g, x);
        let ry = reflect_point(&g, y);
        prop_assert!(close(reflect_point(&g, rx), x, 1e-9));
        prop_assert!((hyp_distance(rx, ry) - hyp_distance(x, y)).abs() < 1e-8 * (1.0 + hyp_distance(x, y)));
        // The mirror is fixed and its sides are exchanged.
        let on = g.point_at(0.3);
        prop_assert!(close(reflect_point(&g, on), on, 1e-9));
        let sx = g.side_value(x);
        if sx.abs() > 1e-6 {
            prop_assert!(g.side_value(rx) * sx < 0.0);
        }
    }

    #[test]
    fn reflected_geodesics_match_reflected_points(g in geodesic(), h in geodesic()) {
        let image = reflect_geodesic(&g, &h);
        for s in [-1.0, 0.0, 0.7] {
            prop_assert!(image.contains(reflect_point(&g, h.point_at(s)), 1e-9));
        }
        let back = reflect_geodesic(&g, &image);
        prop_assert!(boundary_distance(back.theta(), h.theta()) < 1e-9);
        prop_assert!(boundary_distance(back.phi(), h.phi()) < 1e-9);
    }

    #[test]
    fn endpoints_round_trip_through_the_normal(g in geodesic()) {
        let again = DirectedGeodesic::from_normal(g.normal());
        prop_assert!(boundary_distance(again.theta(), g.theta()) < 1e-10);
        prop_assert!(boundary_distance(again.phi(), g.phi()) < 1e-10);
        let (a, b) = lorentz::endpoints(g.normal());
        prop_assert!(boundary_distance(a, g.theta()) < 1e-10);
        prop_assert!(boundary_distance(b, g.phi()) < 1e-10);
    }

    #[test]
    fn isometries_preserve_distance(p in point(), x in point(), y in point()) {
        let t = DiskIsometry::to_origin(p);
        prop_assert!(close(t.apply(p), DiskPoint::ORIGIN, 1e-9));
        let d = hyp_distance(x, y);
        prop_assert!((hyp_distance(t.apply(x), t.apply(y)) - d).abs() < 1e-8 * (1.0 + d));
    }
}

#[test]
fn vertical_lines_map_to_one_geodesic() {
    for x0 in [0.0, -1.5, 2.0] {
        let pts: Vec<DiskPoint> = [0.2, 0.7, 1.0, 3.0, 11.0]
            .iter()
            .map(|&y| cayley_to_disk(Complex64::new(x0, y)).unwrap())
            .collect();
        let g = DirectedGeodesic::from_normal(lorentz::normal_through(lorentz::lift(pts[0]), lorentz::lift(pts[4])));
        for &p in &pts {
            assert!(g.contains(p, 1e-9), "x0 = {x0}: {p:?} is off the image line");
        }
    }
    // The imaginary axis lands on the real diameter.
    let g = geodesic_from_endpoints(PI.into(), 0.0.into()).unwrap();
    for y in [0.1, 1.0, 9.0] {
        assert!(g.contains(cayley_to_disk(Complex64::new(0.0, y)).unwrap(), 1e-12));
    }
    assert!(cayley_to_disk(Complex64::new(1.0, -1.0)).is_err());
}

#[test]
fn alternating_reflections_at_a_vertex_close_up() {
    for lambda in 2..=5u32 {
        for k in [5usize, 6] {
            let p = build_regular(k, VertexSpec::rational(lambda)).unwrap();
            for i in 1..=k {
                let a = p.reflection(i).unwrap();
                let b = p.reflection(i % k + 1).unwrap();
                let rot = a.compose(&b);
                let mut g = DiskIsometry::identity();
                for step in 1..=lambda {
                    g = g.compose(&rot);
                    if step < lambda {
                        assert!(!g.is_identity(1e-6), "λ = {lambda}: closes early at step {step}");
                    }
                }
                assert!(g.is_identity(1e-9), "λ = {lambda}, k = {k}, vertex {i}");
            }
        }
    }
}

#[test]
fn build_regular_validates_to_its_spec() {
    for k in 3..=8 {
        for vertex in [VertexSpec::ideal(), VertexSpec::rational(5), VertexSpec::rational(7)] {
            let p = build_regular(k, vertex).unwrap();
            let again = validate(p.spec()).unwrap();
            assert_eq!(again.spec(), p.spec());
            assert_eq!(again.k(), k);
            for (u, v) in again.vertices().iter().zip(p.vertices()) {
                assert!((u.to_complex() - v.to_complex()).norm() < 1e-9);
            }
            for i in 1..=k {
                assert!((p.realized_angle(i) - vertex.interior_angle()).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn areas_are_positive_bounded_and_monotone() {
    for k in 3..=8usize {
        let mut last = 0.0;
        for lambda in 2..=12u32 {
            let spec = PolygonSpec::regular(k, VertexSpec::rational(lambda));
            match validate(&spec) {
                Ok(p) => {
                    let a = p.area();
                    assert!(a > 0.0 && a < (k as f64 - 2.0) * PI);
                    assert!(a > last, "k = {k}, λ = {lambda}");
                    last = a;
                }
                Err(PolygonError::DegenerateArea { .. }) => assert!(last == 0.0, "k = {k}, λ = {lambda}"),
                Err(e) => panic!("k = {k}, λ = {lambda}: {e}"),
            }
        }
        let ideal = validate(&PolygonSpec::ideal(k)).unwrap();
        assert!((ideal.area() - (k as f64 - 2.0) * PI).abs() < 1e-12);
        assert!(ideal.area() > last);
        assert_eq!(ideal.spec().class, PolygonClass::Ideal);
    }
}

#[test]
fn polygons_are_geodesically_convex() {
    let mut rng = common::rng(11);
    for (name, p) in common::polygons() {
        for _ in 0..1000 {
            let x = hypbill::billiard::random_polygon_point(&p, &mut rng);
            let y = hypbill::billiard::random_polygon_point(&p, &mut rng);
            let t: f64 = rng.gen();
            // Points of the segment are nonnegative combinations on the hyperboloid.
            let mid = lorentz::normalize_timelike(lorentz::add(
                lorentz::scale(lorentz::lift(x), t),
                lorentz::scale(lorentz::lift(y), 1.0 - t),
            ));
            assert!(p.contains(lorentz::to_disk(mid)), "{name}: {x:?} {y:?} at t = {t}");
            assert!(p.contains(x) && p.contains(y));
        }
    }
}
