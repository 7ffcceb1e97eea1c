use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use floatgeo::schema::{FlotationDoc, PairDoc, ReconstructionDoc, VerifyDoc};
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_floatgeo"));
    c.env_remove("FLOATGEO_TOL");
    c
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const SQUARE: &str = r#"{"dim":2,"vertices":[[0,0],[1,0],[1,1],[0,1]]}"#;
const CUBE: &str = r#"{"dim":3,"vertices":[[0,0,0],[1,0,0],[0,1,0],[1,1,0],[0,0,1],[1,0,1],[0,1,1],[1,1,1],[0.5,0.5,0.5]]}"#;
const PENTAGON: &str = r#"{"dim":2,"vertices":[[0,0],[2,0],[2.5,1.5],[1,2.4],[-0.3,1.2]],"density":0.3}"#;
const HEXAGON: &str = r#"{"dim":2,"vertices":[[0,0],[3,0],[4,1],[3,2],[0,2],[-1,0.5]]}"#;

#[test]
fn symmetric_square_has_one_contact_point() {
    let dir = TempDir::new().unwrap();
    let sq = write(&dir, "square.json", SQUARE);
    let out = run(&["flotation", "--in", s(&sq), "--delta", "0.5", "--samples", "360"]);
    assert!(out.status.success());
    let doc: FlotationDoc = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc.samples.len(), 360);
    for row in &doc.samples {
        assert!((row.contact[0] - 0.5).abs() < 1e-15 && (row.contact[1] - 0.5).abs() < 1e-15);
    }
}

#[test]
fn half_density_reconstruction_is_refused() {
    let out = run(&["reconstruct", "--delta", "0.5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("density 1/2 does not determine a polygon"));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let sq = write(&dir, "square.json", SQUARE);
    let bad = write(&dir, "bad.json", "{\"dim\": 2, \"vertices\": [[0, 0], [1");
    let missing = dir.path().join("missing.json");
    let unwritable = dir.path().join("no/such/dir/out.json");
    assert_eq!(run(&["flotation", "--in", s(&missing), "--delta", "0.3"]).status.code(), Some(2));
    assert_eq!(
        run(&["flotation", "--in", s(&sq), "--delta", "0.3", "--out", s(&unwritable)]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["flotation", "--in", s(&bad), "--delta", "0.3"]).status.code(), Some(1));
    assert_eq!(run(&["flotation", "--in", s(&sq), "--delta", "0.9995"]).status.code(), Some(1));
    assert_eq!(run(&["flotation", "--in", s(&sq)]).status.code(), Some(1));
    assert_eq!(run(&["flotation", "--in", s(&sq), "--delta", "0.3", "--samples", "3"]).status.code(), Some(1));
    let out = bin()
        .args(["flotation", "--in", s(&sq), "--delta", "0.3"])
        .env("FLOATGEO_TOL", "-1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn tolerance_variable_merges_close_points() {
    let dir = TempDir::new().unwrap();
    // the balanced hexagon with a point 1e-6 below its bottom side
    let p = write(
        &dir,
        "p.json",
        r#"{"dim":2,"vertices":[[0,0],[1.5,-0.000001],[3,0],[4,1],[3,2],[0,2],[-1,0.5]]}"#,
    );
    let status = |tol: Option<&str>| {
        let mut c = bin();
        c.args(["counterexample", "--in", s(&p), "--epsilon", "0.4"]);
        if let Some(t) = tol {
            c.env("FLOATGEO_TOL", t);
        }
        c.output().unwrap().status.code()
    };
    // the extra vertex splits the bottom side, so no parallel pair remains
    assert_eq!(status(None), Some(1));
    assert_eq!(status(Some("1e-5")), Some(0));
}

#[test]
fn verify_cube_passes() {
    let dir = TempDir::new().unwrap();
    let cube = write(&dir, "cube.json", CUBE);
    let out = run(&["verify", "--in", s(&cube), "--delta", "0.3", "--samples", "64"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: VerifyDoc = serde_json::from_slice(&out.stdout).unwrap();
    assert!(doc.pass);
    let names: Vec<&str> = doc.checks.iter().map(|c| c.name.as_str()).collect();
    for n in ["dupin1_tangent", "dupin2_gradient", "moment_identity"] {
        assert!(names.contains(&n));
    }
}

#[test]
fn verify_planar_includes_curvature() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.json", PENTAGON);
    let out = run(&["verify", "--in", s(&p), "--samples", "64", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("dupin3_curvature,")));
    assert!(text.lines().any(|l| l.starts_with("hyperbola_law,")));
}

#[test]
fn outputs_are_deterministic_across_threads() {
    let dir = TempDir::new().unwrap();
    let cube = write(&dir, "cube.json", CUBE);
    let pent = write(&dir, "p.json", PENTAGON);
    let cases: Vec<Vec<&str>> = vec![
        vec!["flotation", "--in", s(&cube), "--delta", "0.3", "--samples", "200"],
        vec!["buoyancy", "--in", s(&pent), "--format", "csv"],
        vec!["verify", "--in", s(&pent), "--samples", "40", "--seed", "9"],
        vec!["decompose", "--in", s(&pent), "--format", "svg"],
    ];
    for args in cases {
        let a = run(&args).stdout;
        let b = run(&args).stdout;
        let mut threaded = args.clone();
        threaded.extend(["--threads", "4"]);
        let c = run(&threaded).stdout;
        assert!(!a.is_empty());
        assert_eq!(a, b, "{args:?}");
        assert_eq!(a, c, "{args:?}");
    }
}

#[test]
fn decompose_then_reconstruct() {
    let dir = TempDir::new().unwrap();
    let pent = write(&dir, "p.json", PENTAGON);
    let curve = dir.path().join("curve.json");
    assert!(run(&["decompose", "--in", s(&pent), "--out", s(&curve)]).status.success());
    let out = run(&["reconstruct", "--in", s(&curve), "--truth", s(&pent)]);
    assert!(out.status.success());
    let doc: ReconstructionDoc = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc.vertices.len(), 5);
    assert_eq!(doc.status, "complete");
    assert!(doc.hausdorff_to_truth.unwrap() < 1e-9);
}

#[test]
fn samples_then_reconstruct() {
    let dir = TempDir::new().unwrap();
    let pent = write(&dir, "p.json", PENTAGON);
    let samples = dir.path().join("samples.json");
    assert!(run(&["flotation", "--in", s(&pent), "--samples", "4096", "--out", s(&samples)]).status.success());
    let out = run(&["reconstruct", "--in", s(&samples), "--truth", s(&pent)]);
    assert!(out.status.success());
    let doc: ReconstructionDoc = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc.vertices.len(), 5);
    assert!(doc.hausdorff_to_truth.unwrap() < 1e-4);
}

#[test]
fn counterexample_pair() {
    let dir = TempDir::new().unwrap();
    let hex = write(&dir, "hex.json", HEXAGON);
    let out = run(&["counterexample", "--in", s(&hex), "--epsilon", "0.4"]);
    assert!(out.status.success());
    let doc: PairDoc = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc.p.vertices.len(), 6);
    assert_eq!(doc.q.vertices.len(), 8);
    assert_eq!(doc.q.density, Some(0.5));
    let out = run(&["counterexample", "--in", s(&hex), "--epsilon", "5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("convexity"));
}

#[test]
fn svg_layers() {
    let dir = TempDir::new().unwrap();
    let pent = write(&dir, "p.json", PENTAGON);
    let out = run(&["decompose", "--in", s(&pent), "--format", "svg"]);
    let svg = String::from_utf8(out.stdout).unwrap();
    assert!(svg.contains(r#"viewBox="0 0 1000 1000""#));
    for layer in ["polygon", "curve", "asymptotes"] {
        assert!(svg.contains(&format!(r#"<g id="{layer}""#)), "{layer}");
    }
    let cube = write(&dir, "cube.json", CUBE);
    let out = run(&["flotation", "--in", s(&cube), "--delta", "0.3", "--format", "svg"]);
    assert_eq!(out.status.code(), Some(1));
}
