use std::process::{Command, Output};

use serde_json::Value;

fn subnorm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subnorm")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn group_summary() {
    let doc = json(&subnorm(&["group", "S4 x C2", "--classes"]));
    assert_eq!(doc["order"], 48);
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["classes"].as_array().unwrap().len(), 10);
}

fn class_index(spec: &str, order: u64, size: Option<u64>) -> String {
    let doc = json(&subnorm(&["group", spec, "--classes"]));
    doc["classes"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["element_order"] == order && size.is_none_or(|s| c["size"] == s))
        .unwrap()["class"]
        .as_u64()
        .unwrap()
        .to_string()
}

#[test]
fn three_methods_agree_on_a_double_transposition() {
    let k = class_index("S4", 2, Some(3));
    let doc = json(&subnorm(&["subnorm", "S4", "-p", "2", "--class", &k, "--method", "all"]));
    let results = doc["results"].as_array().unwrap();
    assert_eq!(results.len(), 3);
    assert_eq!(doc["agree"], true);
    assert!(results.iter().all(|r| r["order"] == 24));
}

#[test]
fn normal_sylow_flags_every_class_picky() {
    let doc = json(&subnorm(&["picky", "A4", "-p", "2"]));
    let rows = doc["classes"].as_array().unwrap();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r["picky"] == true));
}

#[test]
fn sylow_summary() {
    let doc = json(&subnorm(&["sylow", "S5", "-p", "5"]));
    assert_eq!(doc["sylow_order"], 5);
    assert_eq!(doc["sylow_count"], 6);
    assert_eq!(doc["normalizer_order"], 20);
}

#[test]
fn conjecture_report() {
    let k = class_index("PSL2_8", 3, None);
    let doc = json(&subnorm(&["conjecture", "PSL2_8", "-p", "3", "--class", &k, "--level", "plus"]));
    assert_eq!(doc["verdict"], true);
    assert_eq!(doc["verdict_flipped_convention"], true);
}

#[test]
fn output_is_byte_identical() {
    let a = subnorm(&["chartab", "A5"]);
    let b = subnorm(&["chartab", "A5"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn chartab_export_and_verify() {
    let dir = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli-chartab");
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("s4.json");
    let f = file.to_str().unwrap();
    assert!(subnorm(&["chartab", "S4", "--export", f]).status.success());
    let doc = json(&subnorm(&["chartab", "S4", "--verify", f]));
    assert_eq!(doc["file_matches_computed"], true);
    // Perturb one value: the file no longer verifies.
    let text = std::fs::read_to_string(&file).unwrap();
    let mut table: Value = serde_json::from_str(&text).unwrap();
    table["values"][1][0] = table["values"][0][0].clone();
    table["values"][1][1] = serde_json::json!("7");
    std::fs::write(&file, serde_json::to_string(&table).unwrap()).unwrap();
    let out = subnorm(&["chartab", "S4", "--verify", f]);
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn exit_codes() {
    assert_eq!(subnorm(&["group", "Q(1,2)"]).status.code(), Some(3));
    assert_eq!(subnorm(&["group", "S7", "--classes", "--enumeration-bound", "100"]).status.code(), Some(2));
    assert_eq!(subnorm(&["reproduce", "--claim", "no-such-claim"]).status.code(), Some(3));
    assert_eq!(subnorm(&["subnorm", "S4", "-p", "2", "--class", "99"]).status.code(), Some(3));
    assert_eq!(subnorm(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(subnorm(&["--help"]).status.code(), Some(0));
}

#[test]
fn data_directory_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_subnorm"))
        .env("SUBNORM_DATA_DIR", "/nonexistent/subnorm-data")
        .args(["group", "M12"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn reproduce_single_claim_writes_a_document() {
    let dir = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli-reproduce");
    let _ = std::fs::remove_dir_all(&dir);
    let out = subnorm(&["reproduce", "--claim", "M12-sub-whole-group", "--out", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("M12-sub-whole-group.json")).unwrap()).unwrap();
    assert_eq!(doc["status"], "pass");
    assert_eq!(doc["classes"][0]["subnormaliser_order"], 95040);
}

#[test]
fn tight_bounds_skip_a_claim() {
    let dir = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli-skip");
    let out = subnorm(&[
        "reproduce",
        "--claim",
        "Sz8-2-elements-picky",
        "--enumeration-bound",
        "1000",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("Sz8-2-elements-picky.json")).unwrap()).unwrap();
    assert_eq!(doc["status"], "skipped (bound)");
}
