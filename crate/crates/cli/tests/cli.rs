use std::path::PathBuf;
use std::process::{Command, Output};

use qpcat::families::{build_wnm, FamilyParams};
use qpcat::text::emit_qp;
use qpcat_cli::{parse_qp_file, CliError};
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn qpcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qpcat")).args(args).env_remove("QPCAT_FORMAT").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn sample_file_is_the_family_potential() {
    let qp = parse_qp_file(&data("a2_empty.qp")).unwrap();
    assert_eq!(qp.quiver.num_vertices(), 2);
    assert_eq!(qp.quiver.num_arrows(), 2);
    let p = FamilyParams::from_ints(2, 0, &[], &[1]).unwrap();
    assert_eq!(qp, build_wnm(&p, 12).unwrap());
}

#[test]
fn emitting_a_parsed_file_gives_the_canonical_form() {
    let qp = parse_qp_file(&data("a2_empty.qp")).unwrap();
    let canonical = emit_qp(&qp);
    assert_eq!(canonical, "vertices: 2\narrow a1: 1 -> 2\narrow b1: 2 -> 1\nterm 1 a1 b1 a1 b1 a1 b1\ncap: 12\n");
    assert_eq!(emit_qp(&qpcat::text::parse_qp(&canonical).unwrap()), canonical);
}

#[test]
fn malformed_arrow_line_is_reported_with_its_line() {
    let err = parse_qp_file(&data("bad_arrow.qp")).unwrap_err();
    assert!(matches!(&err, CliError::File { source: qpcat::Error::Parse { line: 3, .. }, .. }), "{err}");
    let o = qpcat(&["jacobian", "dim", "--file", data("bad_arrow.qp").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn jacobian_dim_of_the_a2_family() {
    let o = qpcat(&["jacobian", "dim", "--family", "2,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "Finite dim=10\n");
    let o = qpcat(&["jacobian", "dim", "--file", data("a2_empty.qp").to_str().unwrap()]);
    assert_eq!(stdout(&o), "Finite dim=10\n");
}

#[test]
fn verify_a2_empty_matches_four_values() {
    let o = qpcat(&["--format", "json", "verify", "--case", "A2-empty"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schemaVersion"], 1);
    let modules = v["report"]["modules"].as_array().unwrap();
    assert_eq!(modules.len(), 4);
    assert!(modules.iter().all(|m| m["matchesCcList"] == true));
    let cc: Vec<&str> = modules.iter().map(|m| m["cc"].as_str().unwrap()).collect();
    assert_eq!(cc, ["2*x2/x1", "2*x1/x2", "6/x1", "6/x2"]);
}

#[test]
fn a3_verification_passes_with_flagged_list_conflicts() {
    let o = qpcat(&["verify", "--case", "A3-empty"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("note: listed generator 2*x1/x2 is not the CC value of any catalog module"), "{out}");
    assert!(out.ends_with("PASS\n"));
}

#[test]
fn mutating_at_a_loop_fails() {
    let o = qpcat(&["mutate", "--at", "1", "--file", data("loop_at_1.qp").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("vertex not mutable"));
}

#[test]
fn mutation_sequence_logs_each_step() {
    let f = data("a2_empty.qp");
    let o = qpcat(&["--format", "json", "mutate", "--seq", "1,1", "--family", "1,0"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["steps"].as_array().unwrap().len(), 2);
    assert!(qpcat(&["mutate", "--at", "3", "--file", f.to_str().unwrap()]).status.code() == Some(1));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(qpcat(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(qpcat(&["verify"]).status.code(), Some(2));
    assert_eq!(qpcat(&["--cap", "3", "jacobian", "dim", "--family", "2,0"]).status.code(), Some(2));
    assert_eq!(qpcat(&["verify", "--case", "B7"]).status.code(), Some(2));
}

#[test]
fn json_output_is_deterministic() {
    let args = ["--format", "json", "cc", "--case", "A2-12"];
    let a = qpcat(&args);
    let b = qpcat(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["report"]["modules"][2]["cc"], "9/x1");
}

#[test]
fn flags_can_come_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_qpcat"))
        .args(["module", "gvector", "--case", "A2-empty", "--name", "S1"])
        .env("QPCAT_FORMAT", "json")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["report"]["gVector"], serde_json::json!([1, -1]));
}

#[test]
fn build_and_quotient_round_trip() {
    let built = stdout(&qpcat(&["build", "anm", "--family", "2,2", "--k", "2,1", "--t", "1"]));
    assert!(built.starts_with("vertices: 2\n"));
    let o = qpcat(&["quotient", "--family", "2,2", "--k", "2,1", "--t", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("# round trip: ok") && out.contains("dim base = 12, dim cover = 36"), "{out}");
    let cover = stdout(&qpcat(&["build", "c3", "--family", "2,0"]));
    assert!(cover.starts_with("vertices: 6\n"));
}
