use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn fmoon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fmoon")).args(args).output().expect("binary runs")
}

fn fmoon_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_fmoon"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("stderr is JSON")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fmoon-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn golay_info_counts() {
    let out = fmoon(&["golay", "info"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    for n in ["759", "2576"] {
        assert!(text.contains(n), "{text}");
    }
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(fmoon(&["frob"]).status.code(), Some(64));
    assert_eq!(fmoon(&["q", "jtheta", "--terms", "many"]).status.code(), Some(64));
    assert_eq!(fmoon(&["--help"]).status.code(), Some(0));
}

#[test]
fn malformed_json_exits_65() {
    let out = fmoon_stdin(&["clifford", "spin-check", "--element", "-"], "{\"mode\":");
    assert_eq!(out.status.code(), Some(65));
    assert_eq!(stderr_json(&out)["error"], "malformed-json");
    assert!(out.stdout.is_empty());
}

#[test]
fn invalid_content_exits_2() {
    let out = fmoon_stdin(&["clifford", "spin-check", "--element", "-"], r#"{"mode":"exact","terms":[{"mask":"000001","c":1.0}]}"#);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "invalid");
    let missing = fmoon(&["clifford", "spin-check", "--element", "/nonexistent/x.json"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn failed_check_exits_2_with_report() {
    let odd = r#"{"mode":"exact","terms":[{"mask":"000001","a":["1","1"]},{"mask":"000002","a":["1","1"]}]}"#;
    let out = fmoon_stdin(&["clifford", "spin-check", "--element", "-"], odd);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["spin"], false);
}

#[test]
fn rotation_round_trips_through_mul() {
    let out = fmoon(&["clifford", "rotation", "--i", "0", "--j", "1", "--eighths", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let r = scratch("rot.json", &text);
    let r = r.to_str().unwrap();
    let check = fmoon(&["clifford", "spin-check", "--element", r]);
    assert_eq!(json(&check)["spin"], true);
    // two eighth turns of π/4 compose to e_0 e_1
    let sq = json(&fmoon(&["clifford", "mul", "--left", r, "--right", r]));
    assert_eq!(sq["terms"].as_array().unwrap().len(), 1);
    assert_eq!(sq["terms"][0]["mask"], "000003");
    assert_eq!(sq["terms"][0]["a"], serde_json::json!(["1", "1"]));
    // multiplying by the identity reproduces the input text exactly
    let one = scratch("one.json", r#"{"mode":"exact","terms":[{"mask":"000000","a":["1","1"]}]}"#);
    let same = fmoon(&["clifford", "mul", "--left", r, "--right", one.to_str().unwrap()]);
    assert_eq!(String::from_utf8(same.stdout).unwrap(), text);
}

#[test]
fn jtheta_coefficients() {
    let v = json(&fmoon(&["q", "jtheta", "--terms", "6"]));
    let coeffs: Vec<&str> = v["series"]["terms"].as_array().unwrap().iter().map(|t| t[1].as_str().unwrap()).collect();
    assert_eq!(coeffs, ["1", "24", "276", "2048", "11202", "49152"]);
    let pretty = fmoon(&["--format", "pretty", "q", "jtheta", "--terms", "3"]);
    assert!(String::from_utf8_lossy(&pretty.stdout).starts_with("q^-1/2 + 24 + 276q^1/2"));
}

#[test]
fn mt_of_a_dodecad_matches_the_oracle() {
    let elem = fmoon(&["spin", "code-element", "0x59941f"]);
    assert_eq!(elem.status.code(), Some(0));
    let path = scratch("dodecad.json", &String::from_utf8(elem.stdout).unwrap());
    let out = fmoon(&["mt", "--element", path.to_str().unwrap(), "--terms", "8", "--oracle-degree", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["oracleMatches"], true);
    assert_eq!(v["g"]["shape"], "2^12");
    assert_eq!(v["oracle"].as_array().unwrap().len(), 5);
}

#[test]
fn thread_count_does_not_change_output() {
    let one = fmoon(&["--threads", "1", "fock", "dims", "--max-degree", "5/2"]);
    let three = fmoon(&["--threads", "3", "fock", "dims", "--max-degree", "5/2"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, three.stdout);
}

#[test]
fn random_orbit_feeds_ascent() {
    let orbit = fmoon(&["--seed", "5", "sc", "random", "--rotations", "20"]);
    assert_eq!(orbit.status.code(), Some(0));
    let path = scratch("orbit.json", &String::from_utf8(orbit.stdout).unwrap());
    let out = fmoon(&["--seed", "5", "sc", "ascend", "--vector", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["converged"], true);
    let again = fmoon(&["--seed", "5", "sc", "ascend", "--vector", path.to_str().unwrap()]);
    assert_eq!(again.stdout, out.stdout);
}
