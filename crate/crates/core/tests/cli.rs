use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn balkit(args: &[&str], stdin: &[u8], cache: &std::path::Path) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_balkit"))
        .args(args)
        .env("PAPER_KIT_CACHE", cache)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("balkit runs");
    child.stdin.take().unwrap().write_all(stdin).unwrap();
    child.wait_with_output().unwrap()
}

fn construct(name: &str, cache: &std::path::Path) -> Vec<u8> {
    let out = balkit(&["construct", name], b"", cache);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn strip_time(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("wall_time_ms");
    v
}

#[test]
fn gamma16_pipeline_passes() {
    let cache = tempfile::tempdir().unwrap();
    let g = construct("gamma16", cache.path());
    let out = balkit(&["verify", "--balanced", "4", "--neighborly", "2", "--sphere"], &g, cache.path());
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["checks"].as_array().unwrap().len(), 3);
    assert!(report["input_digest"].is_string());
}

#[test]
fn torus_has_no_ear_decomposition_and_exits_zero() {
    let cache = tempfile::tempdir().unwrap();
    let t = construct("torus7", cache.path());
    let out = balkit(&["ear"], &t, cache.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["outcome"], "none");
    let out = balkit(&["shell"], &t, cache.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["outcome"], "none");
}

#[test]
fn dangling_edge_fails_sphere_with_witness() {
    let cache = tempfile::tempdir().unwrap();
    let doc = br#"{"name":"dangling","vertices":[{"id":0},{"id":1},{"id":2},{"id":3},{"id":4}],
        "facets":[[0,1,2],[0,1,3],[0,2,3],[1,2,3],[3,4]]}"#;
    let out = balkit(&["verify", "--sphere"], doc, cache.path());
    assert_eq!(out.status.code(), Some(1));
    let check = &json(&out)["checks"][0];
    assert_eq!(check["status"], "fail");
    assert!(check["witness"]["reason"].is_string());
}

#[test]
fn input_and_usage_errors_exit_two() {
    let cache = tempfile::tempdir().unwrap();
    assert_eq!(balkit(&["verify", "--sphere"], b"not json", cache.path()).status.code(), Some(2));
    assert_eq!(balkit(&["construct", "dodecahedron"], b"", cache.path()).status.code(), Some(2));
    assert_eq!(balkit(&["verify", "--no-such-flag"], b"", cache.path()).status.code(), Some(2));
    let rp2 = construct("rp2-6", cache.path());
    let out = balkit(&["verify", "--neighborly", "2"], &rp2, cache.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("coloring"));
}

#[test]
fn tiny_budget_is_undecided() {
    let cache = tempfile::tempdir().unwrap();
    let g = construct("gamma16-rank3", cache.path());
    let out = balkit(&["ear", "--budget", "1"], &g, cache.path());
    assert_eq!(out.status.code(), Some(3));
    let report = json(&out);
    assert_eq!(report["result"]["outcome"], "undecided");
    assert_eq!(report["budget"]["limit"], 1);
}

#[test]
fn reports_are_deterministic() {
    let cache = tempfile::tempdir().unwrap();
    let g = construct("gamma16-rank3", cache.path());
    let a = balkit(&["ear"], &g, cache.path());
    let b = balkit(&["--jobs", "1", "ear"], &g, cache.path());
    assert_eq!(strip_time(json(&a)), strip_time(json(&b)));
    assert_eq!(json(&a)["result"]["witness"].as_array().unwrap().len(), 3);
}

#[test]
fn lens16_checks_through_the_cli() {
    let cache = tempfile::tempdir().unwrap();
    let l = construct("lens16", cache.path());
    let out = balkit(&["verify", "--manifold", "--heegaard", "z1,z2/z3,z4", "--link-profile", "4"], &l, cache.path());
    assert_eq!(out.status.code(), Some(0));
    let h = json(&balkit(&["homology"], &l, cache.path()));
    assert_eq!(h["betti"], serde_json::json!([0, 0, 0, 1]));
    assert_eq!(h["torsion"]["1"], serde_json::json!([3]));
    let h3 = json(&balkit(&["homology", "--coefficients", "mod-3"], &l, cache.path()));
    assert_eq!(h3["betti"], serde_json::json!([0, 1, 1, 1]));
    assert_eq!(json(&balkit(&["aut"], &l, cache.path()))["order"], 96);
    assert_eq!(json(&balkit(&["aut", "--color-preserving"], &l, cache.path()))["order"], 4);
}

#[test]
fn fvec_reports_flag_vectors() {
    let cache = tempfile::tempdir().unwrap();
    let g = construct("gamma16", cache.path());
    let v = json(&balkit(&["fvec"], &g, cache.path()));
    assert_eq!(v["f"], serde_json::json!([1, 16, 96, 160, 80]));
    assert_eq!(v["flag_f"]["{1,2}"], 16);
    assert_eq!(v["flag_h"]["{1}"], v["flag_h"]["{2,3,4}"]);
}

#[test]
fn enumerate_writes_census_and_caches_it() {
    let cache = tempfile::tempdir().unwrap();
    let work = tempfile::tempdir().unwrap();
    let spec = work.path().join("spec.json");
    std::fs::write(&spec, r#"{"dim": 2, "sizes": [3, 3, 3]}"#).unwrap();
    let out_dir = work.path().join("census");
    let args = ["enumerate", "--spec", spec.to_str().unwrap(), "--out", out_dir.to_str().unwrap()];
    let first = balkit(&args, b"", cache.path());
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(json(&first)["result"]["count"], 1);
    assert!(out_dir.join("index.json").exists());
    let member = std::fs::read(out_dir.join("complex-001.json")).unwrap();
    assert_eq!(balkit(&["verify", "--sphere", "--balanced", "3"], &member, cache.path()).status.code(), Some(0));
    assert!(std::fs::read_dir(cache.path().join("census")).unwrap().count() == 1);
    let second = balkit(&args, b"", cache.path());
    assert_eq!(json(&second)["result"]["count"], 1);
}

#[test]
fn search_finds_lens_space_from_spec() {
    let cache = tempfile::tempdir().unwrap();
    let work = tempfile::tempdir().unwrap();
    let spec = work.path().join("lens.json");
    std::fs::write(&spec, balkit::construct::lens16_spec().to_json().to_string()).unwrap();
    let out = balkit(&["search", "--spec", spec.to_str().unwrap(), "--first"], b"", cache.path());
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["result"]["count"], 1);
    assert_eq!(report["result"]["outcome"], "first-found");
}

#[test]
fn suite_subcommand_single_criterion() {
    let cache = tempfile::tempdir().unwrap();
    let out = balkit(&["paper-suite", "--criterion", "8"], b"", cache.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("criterion 8: PASS"));
    assert_eq!(balkit(&["paper-suite", "--criterion", "9"], b"", cache.path()).status.code(), Some(2));
}
