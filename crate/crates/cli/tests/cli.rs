use std::path::PathBuf;
use std::process::{Command, Output};

fn symvert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symvert")).args(args).output().unwrap()
}

fn data(name: &str) -> String {
    format!("{}/data/modules/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

fn temp(name: &str, contents: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    p.push(name);
    std::fs::write(&p, contents).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn unknown_suite_exits_2() {
    assert_eq!(symvert(&["verify", "no-such-suite"]).status.code(), Some(2));
}

#[test]
fn malformed_module_exits_2() {
    let m = temp("bad_module.json", r#"{"field_degree":1,"dim":2,"matrices":[["1"]]}"#);
    assert_eq!(symvert(&["vertices", "s3", &m]).status.code(), Some(2));
    assert_eq!(symvert(&["blocks", "no-such-group"]).status.code(), Some(2));
}

#[test]
fn group_bound_exits_3() {
    assert_eq!(symvert(&["blocks", "s5", "--bound-group-order", "60"]).status.code(), Some(3));
    let out = symvert(&["vertices", "s4", &data("s4_natural"), "--bound-dim", "3"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn vertices_json_is_deterministic_and_embeds_field_and_seed() {
    let args = ["vertices", "d12", &data("d12_pim"), "--json", "--seed", "7"];
    let a = symvert(&args);
    let b = symvert(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 7);
    assert_eq!(v["field"]["degree"], 2);
    assert_eq!(v["field"]["modulus"], "7");
    assert_eq!(v["symmetric_vertices"].as_array().unwrap().len(), 2);
}

#[test]
fn blocks_json_is_deterministic() {
    let args = ["blocks", "s3", "--json"];
    let a = symvert(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, symvert(&args).stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["blocks"].as_array().unwrap().len(), 2);
    assert_eq!(v["field"]["degree"], 2);
}

#[test]
fn group_files_are_accepted() {
    let g = temp("s3_table.json", r#"{"points":3,"generators":[[2,1,3],[2,3,1]]}"#);
    let out = symvert(&["vertices", &g, &data("s3_two_dim"), "--json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["green_vertex"]["order"], 1);
}

#[test]
fn form_files_are_validated() {
    let good = temp("s3_two_dim_form.json", r#"{"gram":["0","1","1","0"]}"#);
    let out = symvert(&["vertices", "s3", &data("s3_two_dim"), "--form", &good]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let bad = temp("s3_bad_form.json", r#"{"gram":["1","0","0","0"]}"#);
    assert_eq!(symvert(&["vertices", "s3", &data("s3_two_dim"), "--form", &bad]).status.code(), Some(2));
}

#[test]
fn not_symmetric_type_reports_not_applicable() {
    let out = symvert(&["vertices", "a4", &data("a4_nonselfdual"), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["case"], "not-applicable");
}

#[test]
fn decomposable_module_fails() {
    assert_eq!(symvert(&["vertices", "s3", &data("s3_natural")]).status.code(), Some(1));
}

#[test]
fn oracle_suite_passes() {
    let out = symvert(&["verify", "oracle-small", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v.as_array().unwrap().iter().all(|o| o["passed"] == true));
}
