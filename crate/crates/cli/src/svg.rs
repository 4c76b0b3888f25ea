//! SVG scenes in the unit-disk viewport.
//!
//! Geodesics are drawn as Euclidean circular arcs orthogonal to the unit
//! circle, or as straight segments through the origin. Coordinates are
//! written in disk coordinates under a `scale(1,-1)` group, so arc sweep
//! flags follow the mathematical orientation.

use std::fmt::Write;

use num_complex::Complex64;

const STROKE: f64 = 0.004;

/// Polygons (the first is the base polygon) and geodesics given by their
/// endpoints.
#[derive(Debug, Clone, Default)]
pub struct Scene {
    pub polygons: Vec<Vec<Complex64>>,
    pub geodesics: Vec<(Complex64, Complex64)>,
}

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

/// Center and radius of the circle orthogonal to the unit circle through
/// `a` and `b`, or `None` when they are collinear with the origin.
fn orthogonal_circle(a: Complex64, b: Complex64) -> Option<(Complex64, f64)> {
    let det = a.re * b.im - a.im * b.re;
    if det.abs() < 1e-12 {
        return None;
    }
    // 2⟨c, z⟩ = 1 + |z|² for z ∈ {a, b}.
    let ra = (1.0 + a.norm_sqr()) / 2.0;
    let rb = (1.0 + b.norm_sqr()) / 2.0;
    let c = Complex64::new((ra * b.im - rb * a.im) / det, (a.re * rb - b.re * ra) / det);
    let r = (c - a).norm();
    (r < 1e6).then_some((c, r))
}

/// Path command continuing from `a` to `b` along their geodesic.
fn segment(out: &mut String, a: Complex64, b: Complex64) {
    match orthogonal_circle(a, b) {
        None => {
            let _ = write!(out, " L {} {}", num(b.re), num(b.im));
        }
        Some((c, r)) => {
            let u = a - c;
            let v = b - c;
            let sweep = u.re * v.im - u.im * v.re > 0.0;
            let _ = write!(
                out,
                " A {} {} 0 0 {} {} {}",
                num(r),
                num(r),
                u8::from(sweep),
                num(b.re),
                num(b.im)
            );
        }
    }
}

fn polygon_path(vertices: &[Complex64]) -> String {
    let mut d = format!("M {} {}", num(vertices[0].re), num(vertices[0].im));
    for i in 0..vertices.len() {
        segment(&mut d, vertices[i], vertices[(i + 1) % vertices.len()]);
    }
    d.push_str(" Z");
    d
}

fn geodesic_path(a: Complex64, b: Complex64) -> String {
    let mut d = format!("M {} {}", num(a.re), num(a.im));
    segment(&mut d, a, b);
    d
}

impl Scene {
    pub fn to_svg(&self) -> String {
        let mut s = String::new();
        s.push_str(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.05 -1.05 2.1 2.1\" width=\"800\" height=\"800\">\n",
        );
        s.push_str("<g transform=\"scale(1,-1)\">\n");
        let _ = writeln!(
            s,
            "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"#ffffff\" stroke=\"#000000\" stroke-width=\"{}\"/>",
            num(STROKE)
        );
        for (i, p) in self.polygons.iter().enumerate() {
            let (class, fill) = if i == 0 {
                ("base", "#c9daf2")
            } else {
                ("copy", "#eef3fa")
            };
            let _ = writeln!(
                s,
                "<path class=\"{class}\" d=\"{}\" fill=\"{fill}\" stroke=\"#1f3b73\" stroke-width=\"{}\"/>",
                polygon_path(p),
                num(STROKE)
            );
        }
        for &(a, b) in &self.geodesics {
            let _ = writeln!(
                s,
                "<path class=\"geodesic\" d=\"{}\" fill=\"none\" stroke=\"#b03a2e\" stroke-width=\"{}\"/>",
                geodesic_path(a, b),
                num(1.5 * STROKE)
            );
        }
        s.push_str("</g>\n</svg>\n");
        s
    }
}
