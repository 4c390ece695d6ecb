use std::path::Path;
use std::process::{Command, Output};

use polydome::read_stl;
use serde_json::Value;

fn polydome(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polydome"))
        .args(args)
        .env_remove("POLYDOME_OUT_DIR")
        .output()
        .expect("run polydome")
}

fn ok(args: &[&str]) -> Output {
    let out = polydome(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

/// Keys in the order they appear in the raw JSON text.
fn assert_key_order(text: &str, keys: &[&str]) {
    let pos: Vec<usize> = keys
        .iter()
        .map(|k| {
            text.find(&format!("\"{k}\":"))
                .unwrap_or_else(|| panic!("{k} missing"))
        })
        .collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "{keys:?} out of order");
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Pulls `key=value` out of a summary line.
fn field(line: &str, key: &str) -> f64 {
    line.split_whitespace()
        .find_map(|tok| tok.strip_prefix(&format!("{key}=")))
        .unwrap_or_else(|| panic!("{key} missing in {line}"))
        .parse()
        .unwrap()
}

#[test]
fn mesh_pentagon_stl() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dome5.stl");
    let out = ok(&[
        "mesh",
        "--n",
        "5",
        "--R",
        "1",
        "--segments",
        "32",
        "--rings",
        "32",
        "--format",
        "stl",
        "-o",
        path.to_str().unwrap(),
    ]);
    let line = stdout(&out);
    let exact = 2.0 / 3.0 * 5.0 * (std::f64::consts::PI / 5.0).tan();
    let reported = field(&line, "signed_volume");
    assert!((reported - exact).abs() / exact < 0.005);
    let bytes = std::fs::read(&path).unwrap();
    let triangles = field(&line, "triangles") as usize;
    assert_eq!(bytes.len(), 84 + 50 * triangles);
    let back = read_stl(bytes.as_slice()).unwrap();
    assert_eq!(back.triangles.len(), triangles);
}

#[test]
fn mesh_heptagon_obj_is_closed() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dome7.obj");
    ok(&[
        "mesh",
        "--n",
        "7",
        "--R",
        "1",
        "--format",
        "obj",
        "-o",
        path.to_str().unwrap(),
    ]);
    let file = std::fs::File::open(&path).unwrap();
    let mesh = polydome::read_obj(std::io::BufReader::new(file)).unwrap();
    mesh.validate_closed().unwrap();
    assert_eq!(mesh.topology().euler_characteristic, 2);
}

#[test]
fn invalid_inputs_fail() {
    let out = polydome(&["mesh", "--n", "2", "--R", "1", "-o", "unused.stl"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("n >= 3"));
    assert!(!Path::new("unused.stl").exists());

    let out = polydome(&["volume", "--n", "4", "--R", "-1"]);
    assert!(!out.status.success());
    let out = polydome(&["slabs", "--n", "4", "--m", "0"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("slab count"));
    let out = polydome(&["mesh", "--n", "4", "--format", "json", "-o", "x.json"]);
    assert!(!out.status.success());
    let out = polydome(&["mesh", "--n", "4", "-o", "/nonexistent-dir/x.stl"]);
    assert!(!out.status.success());
}

#[test]
fn volume_square() {
    let out = ok(&["volume", "--n", "4", "--R", "1"]);
    let v = json(&out);
    assert_eq!(v["analytic"].as_f64().unwrap(), 8.0 / 3.0);
    assert!(v["mc_estimate"].is_null());
    assert_key_order(
        &stdout(&out),
        &[
            "analytic",
            "mesh_estimate",
            "mc_estimate",
            "mc_std_error",
            "sample_count",
            "seed",
        ],
    );
}

#[test]
fn volume_is_reproducible() {
    let args = [
        "volume",
        "--n",
        "4",
        "--R",
        "1",
        "--mc-samples",
        "1000000",
        "--seed",
        "42",
    ];
    let a = ok(&args);
    let b = ok(&args);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    let (est, se) = (
        v["mc_estimate"].as_f64().unwrap(),
        v["mc_std_error"].as_f64().unwrap(),
    );
    assert!((est - 8.0 / 3.0).abs() < 3.0 * se);
    assert_eq!(v["sample_count"], 1_000_000);
    assert_eq!(v["seed"], 42);
}

#[test]
fn volume_with_mesh_and_default_mc() {
    let v = json(&ok(&["volume", "--n", "6", "--R", "2", "--mesh", "--mc"]));
    let exact = v["analytic"].as_f64().unwrap();
    assert!((v["mesh_estimate"].as_f64().unwrap() - exact).abs() / exact < 0.005);
    assert_eq!(v["sample_count"], 100_000);
    assert_eq!(v["seed"], 0);
}

#[test]
fn volume_near_hemisphere() {
    let v = json(&ok(&["volume", "--n", "100", "--R", "1"]));
    let hemi = 2.0 * std::f64::consts::PI / 3.0;
    assert!((v["analytic"].as_f64().unwrap() - hemi).abs() / hemi < 7e-4);
}

#[test]
fn slabs_single() {
    let out = ok(&["slabs", "--n", "4", "--R", "1", "--m", "1"]);
    let csv = stdout(&out);
    let rows: Vec<_> = csv.lines().collect();
    assert_eq!(rows[0], "index,z_lo,z_hi,apothem,volume");
    assert_eq!(rows.len(), 2);
    let apothem: f64 = rows[1].split(',').nth(3).unwrap().parse().unwrap();
    assert!((apothem - 0.816_497).abs() < 1e-6);
}

#[test]
fn slabs_refinement_and_volume() {
    let dir = tempfile::tempdir().unwrap();
    let mut deficits = Vec::new();
    for m in ["10", "20"] {
        let csv_path = dir.path().join(format!("slabs{m}.csv"));
        let mesh_path = dir.path().join(format!("stair{m}.stl"));
        let out = ok(&[
            "slabs",
            "--n",
            "4",
            "--R",
            "1",
            "--m",
            m,
            "-o",
            csv_path.to_str().unwrap(),
            "--mesh-output",
            mesh_path.to_str().unwrap(),
        ]);
        let line = stdout(&out);
        deficits.push((
            field(&line, "max_squared_deficit"),
            field(&line, "max_apothem_error"),
        ));
        let csv = std::fs::read_to_string(&csv_path).unwrap();
        let total: f64 = csv
            .lines()
            .skip(1)
            .map(|l| l.split(',').nth(4).unwrap().parse::<f64>().unwrap())
            .sum();
        assert!((total - 8.0 / 3.0).abs() <= 1e-12 * 8.0 / 3.0);
        let stl = read_stl(std::fs::read(&mesh_path).unwrap().as_slice()).unwrap();
        let vol = stl.cast::<f64>().signed_volume();
        assert!((vol - 8.0 / 3.0).abs() / (8.0 / 3.0) < 1e-5);
    }
    let ratio = deficits[0].0 / deficits[1].0;
    assert!((ratio - 4.0).abs() < 1e-3, "{ratio}");
    assert!(deficits[1].1 < deficits[0].1);
}

#[test]
fn xsec_square_diagonal() {
    let out = ok(&["xsec", "--n", "4", "--R", "1", "--azimuth-deg", "45"]);
    let v = json(&out);
    let root2 = 2f64.sqrt();
    assert!((v["semi_axis_pos"].as_f64().unwrap() - root2).abs() < 1e-12);
    assert!((v["semi_axis_neg"].as_f64().unwrap() - root2).abs() < 1e-12);
    assert_eq!(v["vertical_semi_axis"].as_f64().unwrap(), 1.0);
    assert!(v["ellipse_residual"].as_f64().unwrap() < 1e-12);
    assert_key_order(
        &stdout(&out),
        &[
            "azimuth",
            "branch_pos",
            "branch_neg",
            "semi_axis_pos",
            "semi_axis_neg",
        ],
    );
}

#[test]
fn xsec_edge_midlines() {
    let v = json(&ok(&["xsec", "--n", "4", "--R", "1", "--azimuth-deg", "0"]));
    assert!((v["semi_axis_pos"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((v["semi_axis_neg"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    let v = json(&ok(&["xsec", "--n", "3", "--R", "1", "--azimuth-deg", "0"]));
    assert!((v["semi_axis_pos"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((v["semi_axis_neg"].as_f64().unwrap() - 2.0).abs() < 1e-12);
}

#[test]
fn xsec_from_mesh_csv() {
    let out = ok(&[
        "xsec",
        "--n",
        "6",
        "--R",
        "1",
        "--azimuth-deg",
        "-17.5",
        "--from-mesh",
        "--segments",
        "64",
        "--rings",
        "64",
        "--format",
        "csv",
    ]);
    let csv = stdout(&out);
    assert!(csv.starts_with("branch,rho,z\n"));
    assert!(csv.lines().filter(|l| l.starts_with("pos,")).count() > 64);
    let summary = String::from_utf8(out.stderr).unwrap();
    assert!(field(&summary, "residual") < 1e-3);
}

#[test]
fn params_tables() {
    let csv = stdout(&ok(&["params", "--n", "4"]));
    let rows: Vec<Vec<f64>> = csv
        .lines()
        .skip(1)
        .take_while(|l| !l.is_empty())
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0][1..3], [-45.0, 45.0]);
    assert_eq!(rows[1][1..3], [45.0, 135.0]);
    for row in &rows {
        assert!((row[4] - std::f64::consts::FRAC_PI_4.cos()).abs() < 1e-12);
    }

    let v = json(&ok(&["params", "--n", "5", "--format", "json"]));
    assert_eq!(v["sectors"][0]["start_deg"], -36.0);
    assert_eq!(v["sectors"][0]["end_deg"], 36.0);
    for s in v["sectors"].as_array().unwrap() {
        assert!((s["a_min"].as_f64().unwrap() - (std::f64::consts::PI / 5.0).cos()).abs() < 1e-12);
    }
}

#[test]
fn output_dir_override() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_polydome"))
        .args(["volume", "--n", "4", "-o", "report.json"])
        .env("POLYDOME_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(dir.path().join("report.json")).unwrap();
    assert!(text.contains("\"analytic\""));
    assert!(stdout(&out).starts_with("volume: n=4"));
}
