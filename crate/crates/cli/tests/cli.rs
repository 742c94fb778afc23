use std::process::{Command, Output};

fn frobw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frobw"))
        .args(args)
        .env_remove("FROBW_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const CUBIC: &str = "x0^3+x1^3+x2^3+x3^3";

#[test]
fn split_cubic() {
    let o = frobw(&["split", "--p", "5", "--poly", CUBIC, "--e", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["results"][0]["m_e"], 1);
    assert!(stdout(&o).contains(r#""m_e":1"#));
    assert_eq!(v["kind"], "split");
}

#[test]
fn toric_alpha_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p1xp1.json");
    std::fs::write(&path, r#"{"dim":2,"rays":[[1,0],[0,1],[-1,0],[0,-1]],"cones":[[0,1],[1,2],[2,3],[3,0]]}"#)
        .unwrap();
    let o = frobw(&["toric-alpha", "--fan", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains(r#""alpha":"1/2""#));
}

#[test]
fn fano_rejects_quartic() {
    let o = frobw(&["fano", "--p", "5", "--poly", "x0^4+x1^4+x2^4+x3^4", "--e", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("non-Fano: v−δ = 0"));
}

#[test]
fn exit_codes() {
    let o = frobw(&["split", "--p", "11", "--poly", "x^2(z^3-w^3)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("implicit product parentheses unsupported"));
    assert_eq!(frobw(&["split", "--nonsense"]).status.code(), Some(1));
    assert_eq!(frobw(&["frobnicate"]).status.code(), Some(1));
    let bad_fan = frobw(&["toric-alpha", "--fan", "no-such-fan"]);
    assert_eq!(bad_fan.status.code(), Some(1));
}

#[test]
fn not_split_is_reported_not_an_error() {
    let o = frobw(&["split", "--p", "5", "--poly", "x^3+y^3+z^3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains(r#""status":"not-F-split""#));
}

#[test]
fn csv_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("q.csv");
    let o = frobw(&[
        "split", "--p", "3", "--poly", "x0^2+x1^2+x2^2+x3^2", "--e", "1..2", "--format", "csv", "--out",
        out.to_str().unwrap(), "--threads", "2",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(out).unwrap();
    assert!(text.starts_with("e,m,dimRm,b,dimIe\n1,0,1,1,0\n"));
    assert_eq!(text.lines().count(), 1 + 5 + 17);
}

#[test]
fn json_is_deterministic_apart_from_timing() {
    let strip = |s: String| {
        let mut v: serde_json::Value = serde_json::from_str(&s).unwrap();
        v["elapsed_ms"] = 0.into();
        v.to_string()
    };
    let a = frobw(&["fano", "--p", "5", "--poly", CUBIC, "--e", "1..2"]);
    let b = frobw(&["fano", "--p", "5", "--poly", CUBIC, "--e", "1..2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(strip(stdout(&a)), strip(stdout(&b)));
}

#[test]
fn membership_examples() {
    let o = frobw(&["membership", "--p", "7", "--e", "1", "--poly", CUBIC, "--element", "x0*x1*x2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains(r#""member":true"#));
    let o = frobw(&["membership", "--p", "5", "--poly", CUBIC, "--element", "x0"]);
    assert!(stdout(&o).contains(r#""member":false"#));
    let o = frobw(&["membership", "--p", "5", "--poly", CUBIC, "--element", "y"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_runs() {
    let o = frobw(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 11);
}
