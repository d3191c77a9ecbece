use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use floer_core::floercomplex::FloerComplex;
use floer_core::gradedalg::GradedRing;
use floer_core::maslov::LagrangianLoop;

fn floer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_floer")).args(args).output().unwrap()
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn dumped_rings_parse_back() {
    for (kind, n) in [("torus", 3), ("rp", 4)] {
        let o = floer(&["ring", kind, "--n", &n.to_string()]);
        assert_eq!(code(&o), 0);
        let ring = GradedRing::from_json(serde_json::from_slice(&o.stdout).unwrap()).unwrap();
        let again = serde_json::to_value(ring.to_json()).unwrap();
        assert_eq!(again, serde_json::from_slice::<serde_json::Value>(&o.stdout).unwrap());
    }
}

#[test]
fn corpus_files_parse_back() {
    let dir = tempfile::tempdir().unwrap();
    let o = floer(&["corpus", "--seed", "5", "--count", "8", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    for i in 0..8 {
        let path = dir.path().join(format!("complex_{i:04}.json"));
        let text = std::fs::read_to_string(&path).unwrap();
        let fc = FloerComplex::from_json_str(&text).unwrap();
        assert!(fc.check_d_squared().iter().all(|c| c.holds));
        let o = floer(&["ss", "run", path.to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
    }
}

#[test]
fn loop_files_parse_back() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("loop.json");
    let o = floer(&["maslov", "loop", "--k", "2,-1,1", "--samples", "300", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let lp = LagrangianLoop::from_json_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!((lp.n(), lp.len()), (3, 300));
    let o = floer(&["maslov", "index", path.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["value"], 2);
}

#[test]
fn verdict_exit_codes() {
    assert_eq!(code(&floer(&["audin", "torus", "--n", "3", "--maslov", "4", "--displaceable"])), 0);
    assert_eq!(code(&floer(&["audin", "torus", "--n", "2", "--maslov", "2", "--displaceable"])), 1);
    assert_eq!(code(&floer(&["audin", "torus", "--n", "3", "--maslov", "4"])), 1);
    let o = floer(&["audin", "torus", "--n", "3", "--maslov", "3", "--displaceable"]);
    assert_eq!(code(&o), 0);
    assert!(stderr(&o).contains("warning"));
}

#[test]
fn input_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &["ring", "torus", "--n", "0"],
        &["ring", "torus", "--n", "99"],
        &["rp", "--n", "4", "--maslov", "2"],
        &["audin", "torus", "--n", "3", "--maslov", "1", "--displaceable"],
        &["ss", "run", "/nonexistent/file.json"],
        &["maslov", "index", "/nonexistent/loop.json"],
        &["audin", "frobnicate"],
    ];
    for args in cases {
        let o = floer(args);
        assert_eq!(code(&o), 2, "{args:?}: {}", stderr(&o));
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn corrupted_complex_is_rejected() {
    let o = floer(&["ss", "run", data("torus_corrupted.json").to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("x1x2"), "{}", stderr(&o));
}

#[test]
fn coarse_loop_is_a_numerical_failure() {
    let o = floer(&["maslov", "index", data("coarse_4.json").to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    assert!(o.stdout.is_empty());
}

#[test]
fn non_lagrangian_loop_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let id = "[[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [1.0, 0.0]]";
    let skew = "[[1.0, 0.0], [0.0, 1.0], [0.0, 0.0], [1.0, 0.0]]";
    let doc = format!(r#"{{"n": 2, "samples": [{id}, {skew}, {id}]}}"#);
    std::fs::write(&path, doc).unwrap();
    let o = floer(&["maslov", "index", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("Lagrangian"), "{}", stderr(&o));
}

#[test]
fn table_and_json_agree_on_verdict() {
    let args = ["audin", "torus", "--n", "4", "--maslov", "4", "--displaceable"];
    let json: serde_json::Value = serde_json::from_slice(&floer(&args).stdout).unwrap();
    let table = String::from_utf8(floer(&[&args[..], &["--format", "table"]].concat()).stdout).unwrap();
    assert_eq!(json["verdict"], "contradiction");
    assert!(table.lines().nth(1).unwrap().contains("contradiction"));
}
