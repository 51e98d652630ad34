mod common;

use std::path::{Path, PathBuf};
use std::process::Command;

use rand::Rng;
use reachobs::io::{to_json, SystemDocument};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_reachobs"))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn exit_codes_from_the_process() {
    assert_eq!(run(&["check", p(&data("worked.json"))]).0, 0);
    let (code, _, err) = run(&["check", p(&data("interlock.json"))]);
    assert_eq!(code, 1);
    assert!(err.contains("W_L V^U = W^U V_L"));
    assert_eq!(run(&["check", p(&data("truncated.json"))]).0, 2);
    assert_eq!(run(&[]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
    assert_eq!(
        run(&["realize", p(&data("worked.json")), "--z-file", p(&data("one.json")), "--seed", "3"]).0,
        2
    );
}

#[test]
fn build_then_check_is_always_feasible() {
    let dir = tempfile::tempdir().unwrap();
    let mut r = common::rng(11);
    for i in 0..200 {
        let (n, p_, q) = (r.random_range(1..=4), r.random_range(1..=2), r.random_range(1..=2));
        let t = common::random_triple(&mut r, n, p_, q, -3, 3);
        let sys = dir.path().join(format!("sys{i}.json"));
        let prob = dir.path().join(format!("prob{i}.json"));
        std::fs::write(&sys, to_json(&SystemDocument::from_triple(&t))).unwrap();
        let k = r.random_range(1..=4).to_string();
        let m = r.random_range(1..=4).to_string();
        let (code, _, err) = run(&["build", p(&sys), "--k", &k, "--m", &m, "--out", p(&prob)]);
        assert_eq!(code, 0, "{err}");
        let (code, out, _) = run(&["check", p(&prob)]);
        assert_eq!(code, 0, "system {i}: {out}");
    }
}

#[test]
fn build_special_cases() {
    let dir = tempfile::tempdir().unwrap();
    let sys = dir.path().join("sys.json");
    std::fs::write(
        &sys,
        r#"{"A": {"rows": 2, "cols": 2, "scalar_kind": "rational", "entries": [["1", "0"], ["0", "1"]]},
            "B": {"rows": 2, "cols": 1, "scalar_kind": "rational", "entries": [["2"], ["3"]]},
            "C": {"rows": 1, "cols": 2, "scalar_kind": "rational", "entries": [["5", "7"]]}}"#,
    )
    .unwrap();
    let (code, out, _) = run(&["build", p(&sys), "--k", "3", "--m", "1"]);
    assert_eq!(code, 0);
    let doc = reachobs::io::parse_problem(&out).unwrap();
    let prob = doc.to_exact().unwrap();
    let b = reachobs::Mat::from_i64_rows(&[[2], [3]]);
    assert_eq!(prob.v(), &b.hstack(&b).unwrap().hstack(&b).unwrap());
    assert_eq!(prob.w(), &reachobs::Mat::from_i64_rows(&[[5, 7]]));

    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"A": {"rows": 2, "cols": 2, "scalar_kind": "rational", "entries": [["1", "0"], ["0", "1"]]},
            "B": {"rows": 3, "cols": 1, "scalar_kind": "rational", "entries": [["2"], ["3"], ["4"]]},
            "C": {"rows": 1, "cols": 2, "scalar_kind": "rational", "entries": [["5", "7"]]}}"#,
    )
    .unwrap();
    assert_eq!(run(&["build", p(&bad), "--k", "2", "--m", "2"]).0, 2);
}

#[test]
fn float_path() {
    let (code, out, _) = run(&["check", "--float", p(&data("worked.json"))]);
    assert_eq!(code, 0);
    assert!(out.contains("\"mode\": \"float\""));
    assert!(out.contains("\"residuals\""));
    assert_eq!(run(&["check", "--float", p(&data("interlock.json"))]).0, 1);

    let (code, out, _) = run(&["realize", "--float", p(&data("worked.json")), "--z", "random", "--seed", "5"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("\"reachability_residual\": 0.0"));

    let dir = tempfile::tempdir().unwrap();
    let noisy = dir.path().join("noisy.json");
    std::fs::write(
        &noisy,
        r#"{"V": {"rows": 2, "cols": 2, "scalar_kind": "float", "entries": [[1.0, 1e-3], [0.0, 0.0]]},
            "W": {"rows": 2, "cols": 2, "scalar_kind": "float", "entries": [[1.0, 0.0], [0.0, 1.0]]},
            "p": 1, "q": 1, "k": 2, "m": 2}"#,
    )
    .unwrap();
    assert_eq!(run(&["check", "--float", p(&noisy)]).0, 1);
    assert_eq!(run(&["check", "--float", "--tol-residual", "1e-2", p(&noisy)]).0, 0);
    assert_eq!(run(&["check", "--float", "--tol-residual", "-1", p(&noisy)]).0, 2);
    // Exact path refuses float data.
    assert_eq!(run(&["check", p(&noisy)]).0, 2);
}

#[test]
fn z_file_is_used() {
    let dir = tempfile::tempdir().unwrap();
    let z = dir.path().join("z.json");
    std::fs::write(
        &z,
        r#"{"rows": 2, "cols": 2, "scalar_kind": "rational", "entries": [["0", "0"], ["0", "7"]]}"#,
    )
    .unwrap();
    let (code, out, _) = run(&["realize", p(&data("worked.json")), "--z-file", p(&z)]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["triple"]["A"]["entries"], serde_json::json!([["0", "1"], ["0", "7"]]));
    assert!(v.get("seed").is_none());
}

#[test]
fn solve_pair_with_random_z() {
    let args = |seed: &str| {
        run(&[
            "solve-pair",
            "--f",
            p(&data("worked_f.json")),
            "--c",
            p(&data("worked_c.json")),
            "--h",
            p(&data("worked_h.json")),
            "--d",
            p(&data("worked_d.json")),
            "--z",
            "random",
            "--seed",
            seed,
        ])
    };
    let (code, out, _) = args("9");
    assert_eq!(code, 0);
    assert_eq!(args("9").1, out);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let x = &v["solution"]["entries"];
    assert_eq!(x[0], serde_json::json!(["0", "1"]));
    assert_eq!(x[1][0], "0");
    assert_eq!(v["verification"]["left_equation_holds"], true);
    assert_eq!(v["verification"]["right_equation_holds"], true);
}

#[test]
fn ginverse_of_rank_deficient_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.json");
    std::fs::write(
        &f,
        r#"{"rows": 2, "cols": 2, "scalar_kind": "rational", "entries": [["2", "4"], ["1", "2"]]}"#,
    )
    .unwrap();
    let (code, out, _) = run(&["ginverse", p(&f)]);
    assert_eq!(code, 0);
    let y = reachobs::io::parse_matrix(&out).unwrap().to_exact().unwrap();
    let fm = reachobs::Mat::from_i64_rows(&[[2, 4], [1, 2]]);
    assert!(reachobs::is_g1_inverse(&fm, &y).unwrap());
}
