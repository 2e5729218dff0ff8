use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bisep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bisep")).args(args).env_remove("BISEP_BUDGET").output().expect("binary runs")
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).to_string_lossy().into_owned()
}

fn json_out(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&o.stdout)))
}

fn verdict<'a>(report: &'a Value, prop: &str) -> &'a str {
    report["properties"][prop]["verdict"].as_str().unwrap_or_else(|| panic!("no verdict for {prop}: {report}"))
}

#[test]
fn z2z2_properties_come_with_witnesses() {
    let o = bisep(&["check", "--catalog", "z2z2_over_z2", "--props", "split,separable,frobenius", "--witnesses"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json_out(&o);
    for p in ["split", "separable", "frobenius"] {
        assert_eq!(verdict(&r, p), "true");
        assert!(r["properties"][p]["witness"].is_object(), "{p} has no witness");
    }
    assert_eq!(r["implication_violations"], Value::Array(vec![]));
}

#[test]
fn same_extension_in_another_basis() {
    let o = bisep(&["check", "--input", &fixture("z2z2_unit_basis.json"), "--props", "projection_count,frobenius_hom_count"]);
    let r = json_out(&o);
    assert_eq!(r["properties"]["projection_count"]["count"], 2);
    assert_eq!(r["properties"]["frobenius_hom_count"]["count"], 1);
}

#[test]
fn algebra_over_itself_is_separable_via_one_tensor_one() {
    let o = bisep(&["check", "--input", &fixture("r_equals_s.json"), "--props", "separable", "--witnesses"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json_out(&o);
    assert_eq!(verdict(&r, "separable"), "true");
    // the unit is e0, so 1 ⊗ 1 is the single term (0, 0, 1)
    assert_eq!(r["properties"]["separable"]["witness"]["tensor_terms"], serde_json::json!([[0, 0, 1]]));
}

#[test]
fn matrices_over_triangular_are_not_qf() {
    let r = json_out(&bisep(&["check", "--catalog", "matrix_over_triangular", "--props", "qf"]));
    assert_eq!(verdict(&r, "qf"), "false");
}

#[test]
fn reports_are_reproducible_without_timing() {
    let args = ["check", "--catalog", "group_pair:g=S3,h=0+3,field=F3", "--witnesses", "--no-timing"];
    let a = bisep(&args);
    let b = bisep(&args);
    let mut serial = args.to_vec();
    serial.extend(["--jobs", "1"]);
    let c = bisep(&serial);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    assert!(!String::from_utf8_lossy(&a.stdout).contains("\"ms\""));
}

#[test]
fn input_errors_exit_2_with_a_diagnostic() {
    let bad = fixture("not_associative.json");
    let cases = [
        vec!["check", "--input", "/definitely/not/here.json"],
        vec!["check", "--input", &bad],
        vec!["check", "--catalog", "no_such_family"],
        vec!["check", "--catalog", "z2z2_over_z2", "--props", "bogus"],
        vec!["search", "--field", "F6"],
    ];
    for args in cases {
        let o = bisep(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let diag: Value = serde_json::from_slice(&o.stderr).expect("stderr is JSON");
        assert!(diag["error"].is_string() && diag["message"].is_string(), "{diag}");
    }
    let o = bisep(&["check", "--input", &bad]);
    let diag: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(diag["error"], "NotAssociative");
}

#[test]
fn strict_turns_budget_exhaustion_into_exit_3() {
    let base = ["check", "--catalog", "triangular_over_diagonal:field=Q", "--props", "frobenius", "--budget", "2"];
    assert_eq!(bisep(&base).status.code(), Some(0));
    let mut strict = base.to_vec();
    strict.push("--strict");
    let o = bisep(&strict);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(verdict(&json_out(&o), "frobenius"), "unknown");
}

#[test]
fn catalog_list_and_emit_round_trip() {
    let list = json_out(&bisep(&["catalog", "list", "--format", "json"]));
    let names: Vec<&str> = list.as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"z2z2_over_z2"));
    let emitted = bisep(&["catalog", "emit", "triangular_over_diagonal"]);
    assert_eq!(emitted.status.code(), Some(0));
    let path = std::env::temp_dir().join(format!("bisep-emit-{}.json", std::process::id()));
    std::fs::write(&path, &emitted.stdout).unwrap();
    let r = json_out(&bisep(&["check", "--input", path.to_str().unwrap(), "--props", "split,frobenius"]));
    std::fs::remove_file(&path).ok();
    assert_eq!(verdict(&r, "split"), "true");
    assert_eq!(verdict(&r, "frobenius"), "false");
}

#[test]
fn search_violations_reverify_through_check() {
    // Frobenius does not imply separable, e.g. F2[C2] over F2
    let o = bisep(&["search", "--max-dim-r", "3", "--filter", "frobenius", "--expect", "separable", "--no-timing"]);
    assert_eq!(o.status.code(), Some(1));
    let report = json_out(&o);
    let violations = report["violations"].as_array().unwrap();
    assert!(!violations.is_empty());
    for v in violations.iter().take(5) {
        assert_eq!(v["reverified"], true);
        let path = std::env::temp_dir().join(format!("bisep-violation-{}.json", std::process::id()));
        std::fs::write(&path, serde_json::to_vec(&v["instance"]).unwrap()).unwrap();
        let r = json_out(&bisep(&["check", "--input", path.to_str().unwrap(), "--props", "frobenius,separable"]));
        std::fs::remove_file(&path).ok();
        assert_eq!(verdict(&r, "frobenius"), "true");
        assert_eq!(verdict(&r, "separable"), "false");
    }
}

#[test]
fn search_is_the_same_serial_and_parallel() {
    let run = |jobs: &str| bisep(&["search", "--max-dim-r", "3", "--filter", "frobenius", "--expect", "separable", "--no-timing", "--jobs", jobs]).stdout;
    let serial = run("1");
    assert_eq!(serial, run("1"));
    assert_eq!(serial, run("4"));
}

#[test]
fn biseparable_search_finds_no_non_frobenius() {
    let o = bisep(&["search", "--field", "f2", "--max-dim-r", "4", "--filter", "biseparable", "--expect", "frobenius", "--budget", "1000000"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json_out(&o);
    assert_eq!(r["violations"], Value::Array(vec![]));
    assert!(r["filter_hits"].as_u64().unwrap() >= 100, "{}", r["filter_hits"]);
}

#[test]
fn verify_paper_catches_a_mutated_catalog_entry() {
    let o = bisep(&["verify-paper", "--only", "1,catalog", "--replace", &format!("z2z2_over_z2={}", fixture("z2z2_mutated.json"))]);
    assert_eq!(o.status.code(), Some(1));
    let text = String::from_utf8_lossy(&o.stdout);
    let failing: Vec<&str> = text.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert!(failing.iter().any(|l| l.contains("catalog:z2z2_over_z2")), "{text}");
    assert!(failing.iter().any(|l| l.starts_with("FAIL 1 ")), "{text}");
    assert!(text.contains("separable: expected true, got \"false\""), "{text}");
}

#[test]
fn verify_paper_json_output() {
    let o = bisep(&["verify-paper", "--only", "1,2,catalog", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json_out(&o);
    assert_eq!(r["ok"], true);
    assert!(r["rows"].as_array().unwrap().iter().all(|row| row["pass"] == true));
}
