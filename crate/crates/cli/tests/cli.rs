use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hypbill::billiard::{simulate, BaseArc, BilliardError};
use hypbill::hypgeo::DiskIsometry;
use hypbill::polygon::{validate, PolygonSpec, Vertex};
use serde_json::Value;

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn hb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hb"))
        .args(args)
        .env("HB_LOG", "off")
        .output()
        .expect("hb runs")
}

fn config(name: &str) -> String {
    configs().join(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn validate_reports_area_and_rejects_degenerate() {
    let o = hb(&["validate", "--config", &config("polygons/ideal_triangle.json")]);
    assert_eq!(code(&o), 0);
    let area = json(&o)["polygon"]["area"].as_f64().unwrap();
    assert!((area - PI).abs() < 1e-12);

    let o = hb(&["validate", "--config", &config("polygons/lambda4_triangle.json")]);
    assert!((json(&o)["polygon"]["area"].as_f64().unwrap() - PI / 4.0).abs() < 1e-12);

    let o = hb(&["validate", "--config", &config("polygons/degenerate_333.json")]);
    assert_eq!(code(&o), 2);
    assert_eq!(json(&o)["error"]["kind"], "DegenerateArea");
}

#[test]
fn malformed_input_exits_with_3() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    for text in [
        "{not json",
        r#"{"class":"ideal","vertices":[{"kind":"ideal"}],"colour":1}"#,
        r#"{"class":"compact_rational","vertices":[{"kind":"rational"},{"kind":"ideal"},{"kind":"ideal"}]}"#,
        r#"[1, 2, 3]"#,
        r#"{"polygon": 7}"#,
    ] {
        fs::write(&bad, text).unwrap();
        let path = bad.to_string_lossy();
        for cmd in [
            "validate", "simulate", "decode", "analyze", "distance", "converge", "render",
        ] {
            let o = hb(&[cmd, "--config", &path]);
            assert_eq!(code(&o), 3, "{cmd} on {text}");
        }
    }
    let o = hb(&["validate", "--config", "/nonexistent/p.json"]);
    assert_eq!(code(&o), 3);
    let o = hb(&["validate", "--bogus-flag"]);
    assert_eq!(code(&o), 3);
    let o = hb(&[
        "render",
        "--config",
        &config("polygons/ideal_triangle.json"),
        "--format",
        "csv",
    ]);
    assert_eq!(code(&o), 3);
    let o = hb(&["decode", "--config", &config("decode_lambda4.json"), "--word", "12x"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn budgets_must_be_positive() {
    let o = hb(&["converge", "--config", &config("converge_ttoct.json"), "--budget", "0"]);
    assert_eq!(code(&o), 2);
}

fn sides(csv: &str) -> Vec<usize> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').nth(3).unwrap().parse().unwrap())
        .collect()
}

#[test]
fn simulated_periodic_orbit_repeats_its_code() {
    let o = hb(&["simulate", "--config", &config("simulate_ideal_triangle.json")]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("index,theta_rad,phi_rad,side,hit_re,hit_im\n"));
    let s = sides(&text);
    assert_eq!(s.len(), 10);
    for (i, &a) in s.iter().enumerate() {
        assert_eq!(a, [1, 2, 3][i % 3]);
    }
}

#[test]
fn start_towards_an_ideal_vertex_is_reported() {
    let o = hb(&[
        "simulate",
        "--config",
        &config("simulate_to_ideal_vertex.json"),
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 2);
    assert_eq!(json(&o)["error"]["kind"], "AsymptoticToIdealVertex");
}

#[test]
fn mirrored_start_gives_mirrored_code() {
    // The symmetric ideal triangle has v1 on the positive real axis. Side i
    // joins v(i-1) to v(i), so conjugation fixes side 3 and swaps 1 and 2.
    let p = config("polygons/ideal_triangle.json");
    let run = |theta: f64, phi: f64| {
        let o = hb(&[
            "simulate",
            "--config",
            &p,
            "--theta",
            &theta.to_string(),
            "--phi",
            &phi.to_string(),
            "--n-future",
            "15",
            "--n-past",
            "5",
        ]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        sides(&stdout(&o))
    };
    let a = run(2.5, 5.9);
    let b = run(-2.5, -5.9);
    let mirrored: Vec<usize> = a.iter().map(|&s| [0, 2, 1, 3][s]).collect();
    assert_eq!(b, mirrored);
}

fn run_start(polygon: &Path, start: &str) -> Output {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    let text = format!(
        r#"{{"polygon": {:?}, "start": {start}, "n_future": 6}}"#,
        polygon.to_string_lossy()
    );
    fs::write(&cfg, text).unwrap();
    hb(&["simulate", "--config", &cfg.to_string_lossy(), "--format", "json"])
}

#[test]
fn vertex_termination_is_a_warning() {
    // From the center towards the image of a vertex in a side: after the
    // first bounce the trajectory runs into that vertex.
    let path = configs().join("polygons/square_lambda3.json");
    let spec = PolygonSpec::from_json(&fs::read_to_string(&path).unwrap()).unwrap();
    let p = validate(&spec).unwrap();
    let x = p.center();
    let to_origin = DiskIsometry::to_origin(x);
    let mut checked = 0;
    for side in 1..=p.k() {
        let r = p.reflection(side).unwrap();
        for v in p.vertices() {
            let target = to_origin.apply(r.apply(match v {
                Vertex::Interior(q) => *q,
                Vertex::Ideal(_) => unreachable!(),
            }));
            let psi = target.im().atan2(target.re());
            // Vertices of the side itself are fixed by the reflection.
            let Ok(arc) = BaseArc::through(&p, x, psi) else {
                continue;
            };
            if !matches!(
                simulate(&p, arc, 3, 0),
                Err(BilliardError::TerminatedAtVertex { index: 1, .. })
            ) {
                continue;
            }
            let start = format!(
                r#"{{"kind": "through", "point": [{:e}, {:e}], "psi_rad": {psi:e}}}"#,
                x.re(),
                x.im()
            );
            let o = run_start(&path, &start);
            assert_eq!(code(&o), 0);
            let v = json(&o);
            assert!(v["warning"].as_str().unwrap().contains("vertex at index 1"), "{v}");
            assert_eq!(v["rows"].as_array().unwrap().len(), 1);
            checked += 1;
        }
    }
    assert!(checked > 0);

    // In the ideal triangle the geodesic from π/3 to π reflects in side 3
    // onto a geodesic ending at v1.
    let o = run_start(
        &configs().join("polygons/ideal_triangle.json"),
        &format!(
            r#"{{"kind": "endpoints", "theta_rad": {:e}, "phi_rad": {:e}}}"#,
            PI / 3.0,
            PI
        ),
    );
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert!(
        v["warning"].as_str().unwrap().contains("ideal vertex at index 1"),
        "{v}"
    );
}

#[test]
fn decode_round_trip_through_simulate() {
    let o = hb(&["decode", "--config", &config("decode_lambda4.json")]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["code"], ".1213");
    let (theta, phi) = (v["theta_rad"].as_f64().unwrap(), v["phi_rad"].as_f64().unwrap());
    let o = hb(&[
        "simulate",
        "--config",
        &config("polygons/lambda4_triangle.json"),
        "--theta",
        &format!("{theta:e}"),
        "--phi",
        &format!("{phi:e}"),
        "--n-future",
        "7",
        "--format",
        "text",
    ]);
    assert_eq!(stdout(&o), ".12131213\n");
}

#[test]
fn analyze_reports_spectrum_and_mixing() {
    let o = hb(&["analyze", "--config", &config("polygons/ideal_hexagon.json")]);
    let v = json(&o);
    assert!((v["perron"].as_f64().unwrap() - 5.0).abs() < 1e-9);
    assert!((v["entropy"].as_f64().unwrap() - 5f64.ln()).abs() < 1e-9);
    assert_eq!(v["mixing"], true);

    let v = json(&hb(&["analyze", "--config", &config("polygons/lambda4_triangle.json")]));
    assert_eq!(v["mixing"], true);
    assert!(v["perron"].as_f64().unwrap() > 1.0);

    let v = json(&hb(&["analyze", "--config", &config("polygons/ideal_triangle.json")]));
    assert_eq!(v["forbidden"], serde_json::json!(["11", "22", "33"]));
}

#[test]
fn distance_between_polygon_codings() {
    let v = json(&hb(&[
        "distance",
        "--config",
        &config("distance_ideal_vs_lambda4.json"),
    ]));
    assert_eq!(v["distance_exponent"], 2);
    assert_eq!(v["distance"], 0.25);
    assert_eq!(v["witness"]["word"], "12121");
    let v = json(&hb(&["distance", "--config", &config("distance_full_vs_golden.json")]));
    assert_eq!(v["distance"], 0.5);
}

fn table(o: &Output) -> Vec<Vec<String>> {
    assert_eq!(code(o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    stdout(o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(String::from).collect())
        .collect()
}

#[test]
fn converge_tables() {
    let rows = table(&hb(&["converge", "--config", &config("converge_even_shift.json")]));
    let d: Vec<f64> = rows.iter().map(|r| r[2].parse().unwrap()).collect();
    assert!(d.windows(2).all(|w| w[1] <= w[0]));

    let rows = table(&hb(&["converge", "--config", &config("converge_ttoct.json")]));
    let (limit, seq) = rows.split_last().unwrap();
    assert!(seq.iter().all(|r| r[3] == "true"));
    assert_eq!(limit[0], "limit");
    assert_eq!(limit[3], "false");
    assert_eq!(limit[5], "true");

    let rows = table(&hb(&[
        "converge",
        "--config",
        &config("converge_compact_stabilizing.json"),
    ]));
    let e: Vec<&str> = rows.iter().map(|r| r[1].as_str()).collect();
    assert_eq!(e[3..], ["", "", ""]);
    assert!(e[..3].iter().all(|x| !x.is_empty()));
}

fn count(svg: &str, class: &str) -> usize {
    svg.matches(&format!("class=\"{class}\"")).count()
}

#[test]
fn render_scenes() {
    let o = hb(&["render", "--config", &config("render_ideal_triangle.json")]);
    let svg = stdout(&o);
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("viewBox=\"-1.05 -1.05 2.1 2.1\""));
    assert_eq!((count(&svg, "base"), count(&svg, "copy")), (1, 0));

    let svg = stdout(&hb(&["render", "--config", &config("render_unfold_121.json")]));
    assert_eq!(count(&svg, "base") + count(&svg, "copy"), 4);

    let svg = stdout(&hb(&["render", "--config", &config("render_orbit_1213.json")]));
    assert_eq!(count(&svg, "geodesic"), 1);

    let svg = stdout(&hb(&[
        "render",
        "--config",
        &config("polygons/lambda4_triangle.json"),
        "--depth",
        "2",
    ]));
    // 1 + 3 + 3·2 tiles within two reflections.
    assert_eq!(count(&svg, "base") + count(&svg, "copy"), 10);
}

#[test]
fn out_flag_writes_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.csv");
    let o = hb(&[
        "simulate",
        "--config",
        &config("simulate_ideal_triangle.json"),
        "--out",
        &out.to_string_lossy(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    assert!(fs::read_to_string(&out).unwrap().starts_with("index,"));
}

fn command_for(name: &str) -> Option<(&'static str, i32)> {
    let expect = if name.contains("degenerate") || name.contains("to_ideal_vertex") {
        2
    } else {
        0
    };
    let cmd = ["simulate", "decode", "distance", "converge", "render"]
        .into_iter()
        .find(|c| name.starts_with(c))?;
    Some((cmd, expect))
}

fn all_runs() -> Vec<(String, &'static str, i32)> {
    let mut runs = Vec::new();
    for entry in fs::read_dir(configs().join("polygons")).unwrap() {
        let path = entry.unwrap().path();
        let expect = if path.to_string_lossy().contains("degenerate") {
            2
        } else {
            0
        };
        runs.push((path.to_string_lossy().into_owned(), "validate", expect));
        runs.push((path.to_string_lossy().into_owned(), "analyze", expect));
    }
    for entry in fs::read_dir(configs()).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        if let Some((cmd, expect)) = command_for(&name) {
            runs.push((path.to_string_lossy().into_owned(), cmd, expect));
        }
    }
    runs.sort();
    runs
}

#[test]
fn every_checked_in_config_runs() {
    let runs = all_runs();
    assert!(runs.len() >= 20);
    for (path, cmd, expect) in runs {
        let o = hb(&[cmd, "--config", &path]);
        assert_eq!(code(&o), expect, "{cmd} {path}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn outputs_are_deterministic_under_a_fixed_seed() {
    for (path, cmd, _) in all_runs() {
        for seed in ["1", "7"] {
            let a = hb(&[cmd, "--config", &path, "--seed", seed]);
            let b = hb(&[cmd, "--config", &path, "--seed", seed]);
            assert_eq!(a.stdout, b.stdout, "{cmd} {path} seed {seed}");
            assert_eq!(a.status, b.status);
        }
    }
    let random = config("simulate_random_lambda4.json");
    let a = hb(&["simulate", "--config", &random, "--seed", "1"]);
    let b = hb(&["simulate", "--config", &random, "--seed", "2"]);
    assert_ne!(a.stdout, b.stdout);
}
