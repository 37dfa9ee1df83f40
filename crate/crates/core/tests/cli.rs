use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn gpif(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gpif")).args(args).output().expect("spawn gpif")
}

fn script(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scripts").join(name).display().to_string()
}

fn temp_script(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gpif-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn bundled_scripts_pass_with_expect_pass() {
    for name in ["example_1_4.gpif", "remark_pq.gpif", "zmod8.gpif", "zmod12.gpif", "dsum_max.gpif"] {
        let out = gpif(&["run", &script(name), "--expect-pass"]);
        assert_eq!(out.status.code(), Some(0), "{name}:\n{}", stdout(&out));
        assert!(stdout(&out).ends_with("status: ok\n"), "{name}");
    }
}

#[test]
fn run_json_is_one_document() {
    let out = gpif(&["run", &script("zmod12.gpif"), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["schema"], "gpif.run/1");
    assert_eq!(v["status"], "ok");
    assert_eq!(v["results"][0]["value"]["text"], "(2)^2 * (3)^1");
}

#[test]
fn mismatch_exits_one() {
    let p = temp_script(
        "mismatch.gpif",
        "ring Z/8\nideal p = (2) prime\nquery power-stabilizes p ^ 3 expect true\n",
    );
    let out = gpif(&["run", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("MISMATCH"));
    assert!(stdout(&out).ends_with("status: mismatch\n"));
}

#[test]
fn expect_pass_turns_false_into_mismatch() {
    let p = temp_script("implied.gpif", "ring Z/8\nideal p = (2) prime\nquery power-stabilizes p ^ 2\n");
    assert_eq!(gpif(&["run", p.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(gpif(&["run", p.to_str().unwrap(), "--expect-pass"]).status.code(), Some(1));
}

#[test]
fn parse_and_evaluation_errors_exit_two() {
    let bad = temp_script("bad.gpif", "ring R = Z/8\n");
    let out = gpif(&["run", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).starts_with("error: line 1: parse error"));

    let not_prime = temp_script("np.gpif", "ring Z/8\nideal q = (4) prime\nquery power-stabilizes q ^ 2\n");
    assert_eq!(gpif(&["run", not_prime.to_str().unwrap()]).status.code(), Some(2));

    let missing = gpif(&["run", "/nonexistent/file.gpif"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn check_subcommand() {
    let out = gpif(&["check", "COLON-CHAR", "--samples", "25", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("COLON-CHAR"));
    assert!(stdout(&out).contains("25 instances"));

    let json = gpif(&["check", "DSUM-MAX", "--samples", "10", "--seed", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&json).trim()).unwrap();
    assert_eq!(v["schema"], "gpif.property/1");
    assert_eq!(v["pass"], true);
    assert_eq!(v["instances"], 10);

    assert_eq!(gpif(&["check", "NO-SUCH-PROPERTY"]).status.code(), Some(2));
}

#[test]
fn sampled_check_output_is_reproducible() {
    let args = ["check", "UNIQUE-MULTISET", "--samples", "40", "--seed", "99", "--format", "json"];
    assert_eq!(stdout(&gpif(&args)), stdout(&gpif(&args)));
}
