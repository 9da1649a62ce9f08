use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superhopf")).args(args).env_remove("SUPERHOPF_CATALOG_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_all_passes_every_record() {
    let o = run(&["verify", "--all"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("167 passed, 0 failed"));
}

#[test]
fn census_reports_per_dimension() {
    let o = run(&["--json", "antipode", "--census"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let dims: Vec<(u64, u64)> =
        v["per_dim"].as_array().unwrap().iter().map(|r| (r["dim"].as_u64().unwrap(), r["found"].as_u64().unwrap())).collect();
    assert_eq!(dims, [(2, 1), (3, 0), (4, 5)]);
}

#[test]
fn iso_exit_codes() {
    let o = run(&["iso", "H4", "dual(H2)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("iso"));
    let o = run(&["iso", "A_{2|2}^1", "A_{2|2}^2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("is_cocommutative"));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(run(&["verify", "--id", "nope"]).status.code(), Some(64));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn strict_mode_flags_grid_limited_searches() {
    assert_eq!(run(&["search-comult", "A3_{2|2}"]).status.code(), Some(0));
    assert_eq!(run(&["--strict", "search-comult", "A3_{2|2}"]).status.code(), Some(2));
    assert_eq!(run(&["--strict", "search-comult", "A3_{1|1}"]).status.code(), Some(0));
}

#[test]
fn json_output_is_deterministic() {
    let a = run(&["--json", "fingerprint", "--id", "H2"]);
    let b = run(&["--json", "fingerprint", "--id", "H2"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(v.is_object());
}

#[test]
fn catalog_directory_override() {
    let dir = std::env::temp_dir().join(format!("superhopf-cli-{}", std::process::id()));
    let d = dir.to_str().unwrap();
    assert_eq!(run(&["export", d]).status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_superhopf"))
        .args(["verify", "--all"])
        .env("SUPERHOPF_CATALOG_DIR", d)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("167 passed"));
    let file = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .find(|p| p.file_name().unwrap() != "index.json")
        .unwrap();
    assert_eq!(run(&["import", file.to_str().unwrap()]).status.code(), Some(0));
    std::fs::remove_dir_all(&dir).unwrap();
    let missing = Command::new(env!("CARGO_BIN_EXE_superhopf"))
        .args(["verify", "--all"])
        .env("SUPERHOPF_CATALOG_DIR", dir.join("absent"))
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(64));
}

#[test]
fn constructions_from_the_command_line() {
    assert_eq!(run(&["construct", "dual", "--id", "H2"]).status.code(), Some(0));
    assert_eq!(run(&["connected", "--odd", "2"]).status.code(), Some(0));
    assert_eq!(run(&["extend", "A_2", "--odd", "1"]).status.code(), Some(0));
    assert!(run(&["counits", "M2Graded"]).status.success());
}
