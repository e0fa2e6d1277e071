use std::path::Path;
use std::process::{Command, Output};

use rgroup::report::ReportDocument;

fn rgroup(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rgroup")).args(args).output().expect("binary runs")
}

fn write_fixture(dir: &Path, name: &str) -> String {
    let path = dir.join(format!("{name}.json"));
    let out = rgroup(&["fixtures", name, "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    path.to_str().unwrap().to_string()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn validate_shipped_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    for name in rgroup::fixtures::FIXTURE_NAMES {
        let path = write_fixture(dir.path(), name);
        let out = rgroup(&["validate", &path]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", stderr(&out));
    }
}

#[test]
fn injected_sum_root_is_a_validation_failure() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_fixture(dir.path(), "prime3");
    let text = std::fs::read_to_string(&path).unwrap();
    let bad = text.replace("\"delta_prime\": []", "\"delta_prime\": [\"e1+e2\"]");
    assert_ne!(bad, text);
    let bad_path = dir.path().join("bad.json");
    std::fs::write(&bad_path, bad).unwrap();
    let out = rgroup(&["validate", bad_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("[delta-sum]"), "{}", stderr(&out));

    let out = rgroup(&["validate", "--json", bad_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["violations"][0]["rule"], "delta-sum");
    assert_eq!(v["group"]["r"], 3);

    let out = rgroup(&["analyze", bad_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_input_is_a_schema_failure() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mal.json");
    std::fs::write(&path, "{\"group\": 3").unwrap();
    let out = rgroup(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("line 1"), "{}", stderr(&out));
    let out = rgroup(&["validate", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let out = rgroup(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unknown_fixture_lists_names() {
    let out = rgroup(&["fixtures", "unknown"]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("prime3") && err.contains("siegel1"), "{err}");
}

#[test]
fn fixture_bytes_are_canonical() {
    let out = rgroup(&["fixtures", "prime3"]);
    assert_eq!(stdout(&out), rgroup::fixtures::fixture_json("prime3").unwrap());
}

#[test]
fn analyze_prime3_json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_fixture(dir.path(), "prime3");
    let out = rgroup(&["analyze", "--json", "--with-oracle", &path]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    let rep: ReportDocument = serde_json::from_str(&text).unwrap();
    assert_eq!(rep.r_group.r_sigma.len(), 24);
    assert_eq!(rep.character_table.irreps.len(), 8);
    assert_eq!(rep.regular_set.len(), 8);
    assert_eq!(rep.elliptic.elliptic_count(), 6);
    assert!(rep.all_passed());
    assert_eq!(rep.to_json(), text);
    let again = rgroup(&["analyze", "--json", "--with-oracle", &path]);
    assert_eq!(stdout(&again), text);
}

#[test]
fn analyze_siegel_text_carries_the_banner() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_fixture(dir.path(), "siegel1");
    let out = rgroup(&["analyze", &path]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("note: Siegel Levi"), "{}", stdout(&out));
}

#[test]
fn strict_diff_rule_flag() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_fixture(dir.path(), "gl-reducible");
    assert_eq!(rgroup(&["validate", "--strict-diff-rule", &path]).status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let mut loose = doc.clone();
    loose["delta_prime"] = serde_json::json!([]);
    let loose_path = dir.path().join("loose.json");
    std::fs::write(&loose_path, serde_json::to_string(&loose).unwrap()).unwrap();
    let loose_path = loose_path.to_str().unwrap();
    let out = rgroup(&["validate", loose_path]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!stderr(&out).contains("[delta-diff-strict]"));
    let out = rgroup(&["validate", "--strict-diff-rule", loose_path]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("[delta-diff-strict]"), "{}", stderr(&out));
}

#[test]
fn oracle_command() {
    let out = rgroup(&["oracle", "prop32", "--r-max", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).starts_with("PASS prop32"));
    let out = rgroup(&["oracle", "thm39", "--r-max", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v[0]["passed"], true);
    assert_eq!(rgroup(&["oracle", "lemma99"]).status.code(), Some(1));
    assert_eq!(rgroup(&["oracle", "all", "--r-max", "7"]).status.code(), Some(1));
}
