use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_convopoly"))
        .env_remove("CONVOPOLY_CAP_CYCLES")
        .current_dir(golden_dir())
        .args(args)
        .output()
        .expect("failed to spawn convopoly")
}

/// Compare stdout with `tests/golden/<name>`; `UPDATE_GOLDEN=1` rewrites it.
fn assert_golden(name: &str, args: &[&str]) {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed with {:?}:\n{}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    let path = golden_dir().join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, &out.stdout).unwrap();
    }
    let expected = fs::read(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&expected),
        "stdout of {args:?} differs from {name}"
    );
}

fn assert_exit(code: i32, args: &[&str]) {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(code),
        "{args:?}: stderr was\n{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn corners() {
    assert_golden("corners_d2_diff.json", &["corners", "--d", "2", "--kind", "diff"]);
    assert_golden("corners_d2_diff_raw.json", &["corners", "--d", "2", "--kind", "diff", "--raw"]);
    assert_golden("corners_d1_diff.json", &["corners", "--d", "1", "--kind", "diff"]);
    assert_golden("corners_d1_sum.json", &["corners", "--d", "1", "--kind", "sum", "--emit-graph"]);
}

#[test]
fn verify() {
    assert_golden("verify_d2_diff.csv", &["verify", "--d", "2", "--kind", "diff", "--n-range", "8:12", "--format", "csv"]);
    assert_golden("verify_d2_diff.json", &["verify", "--d", "2", "--kind", "diff", "--n-range", "8:12"]);
    assert_golden("verify_d4_points24.csv", &["verify", "--d", "4", "--kind", "diff", "--points", "2,4", "--n-range", "8:10", "--format", "csv"]);
}

#[test]
fn decompose() {
    assert_golden("decompose_fixture.json", &["decompose", "--d", "2", "--kind", "diff", "--n", "5", "--set", "1,3"]);
    assert_golden("decompose_sum.json", &["decompose", "--d", "1", "--kind", "sum", "--n", "3", "--set", "-3,0,2"]);
}

#[test]
fn project() {
    assert_golden("project_d2_points2.json", &["project", "--points", "2", "--from", "corners_d2_diff.json"]);
}

#[test]
fn reconstruct() {
    assert_golden("reconstruct_odd.json", &["reconstruct", "--d", "2", "--kind", "diff", "--n", "20", "--lambdas", "lambdas_odd.json"]);
    assert_golden("reconstruct_mix.json", &["reconstruct", "--d", "2", "--kind", "diff", "--n", "24", "--lambdas", "lambdas_mix.json"]);
}

#[test]
fn output_is_byte_stable() {
    let args = ["verify", "--d", "2", "--kind", "sum", "--n-range", "3:4", "--seed", "9"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn out_flag_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("convopoly-out-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c.json");
    let out = run(&["corners", "--d", "2", "--kind", "diff", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(fs::read(&path).unwrap(), fs::read(golden_dir().join("corners_d2_diff.json")).unwrap());
    fs::remove_dir_all(dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_exit(2, &["corners", "--d", "2", "--kind", "product"]);
    assert_exit(2, &["verify", "--d", "2", "--kind", "diff", "--n-range", "9:8"]);
    assert_exit(2, &["corners", "--d", "2", "--kind", "diff", "--points", "2,1"]);
    assert_exit(2, &["decompose", "--d", "2", "--kind", "diff", "--n", "5", "--set", "1,9"]);
    assert_exit(2, &["project", "--points", "3", "--from", "corners_d2_diff.json"]);
    assert_exit(3, &["corners", "--d", "9", "--kind", "diff"]);
    assert_exit(3, &["corners", "--d", "5", "--kind", "sum"]);
    assert_exit(3, &["corners", "--d", "3", "--kind", "diff", "--cap-cycles", "5"]);
    assert_exit(3, &["verify", "--d", "1", "--kind", "diff", "--n-range", "20:23"]);
    assert_exit(4, &["project", "--points", "1", "--from", "malformed.json"]);
    assert_exit(4, &["reconstruct", "--d", "2", "--kind", "diff", "--n", "10", "--lambdas", "lambdas_bad.json"]);
    assert_exit(1, &["project", "--points", "1", "--from", "does-not-exist.json"]);
}

#[test]
fn cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_convopoly"))
        .env("CONVOPOLY_CAP_CYCLES", "3")
        .args(["corners", "--d", "2", "--kind", "diff"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}
