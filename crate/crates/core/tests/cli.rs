use std::path::PathBuf;
use std::process::{Command, Output};

use multitrunc::cli::JobFile;
use multitrunc::demos;
use serde_json::{json, Value};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multitrunc"))
        .args(args)
        .output()
        .unwrap()
}

fn ok_json(args: &[&str]) -> Value {
    let out = bin(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn failure(args: &[&str]) -> (i32, String) {
    let out = bin(args);
    assert!(out.stdout.is_empty());
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.trim_end().lines().count(), 1, "multi-line error: {err}");
    (out.status.code().unwrap(), err.trim_end().to_string())
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("multitrunc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn job(entries: Value) -> String {
    json!({
        "ring": {"n": [1, 1]},
        "module": {"target_twists": [[0, 0]], "source_twists": [[1, 0]], "entries": entries}
    })
    .to_string()
}

#[test]
fn irrelevant_ideal_goldens() {
    let v = ok_json(&["resolve", "--demo", "irrelevant-ideal"]);
    assert_eq!(v["ranks"], json!([1, 6, 9, 5, 1]));
    assert_eq!(v["regularity"], json!(1));
    let v = ok_json(&["bounds", "--demo", "irrelevant-ideal"]);
    assert_eq!(v["linear_truncations_bound"], json!([[0, 1], [1, 0]]));
    assert_eq!(v["regularity_bound"], json!([[0, 0]]));
}

#[test]
fn three_generator_module_goldens() {
    let v = ok_json(&["resolve", "--demo", "section3-module"]);
    assert_eq!(v["ranks"], json!([3, 2]));
    assert_eq!(
        v["betti"],
        json!([
            [{"degree": [1, 0], "count": 1}, {"degree": [0, 1], "count": 2}],
            [{"degree": [1, 1], "count": 2}]
        ])
    );
    assert_eq!(
        ok_json(&["support-tor", "--demo", "section3-module"]),
        json!([[[1, 0], [0, 1]], [[1, 1]]])
    );
    assert_eq!(
        ok_json(&["linear-truncations", "--demo", "section3-module"]),
        json!([[0, 2], [1, 1]])
    );
    let v = ok_json(&["bounds", "--demo", "section3-module"]);
    assert_eq!(v["linear_truncations_bound"], json!([[1, 1]]));
    assert_eq!(v["regularity_bound"], json!([[0, 0]]));
    assert_eq!(v["partial_regularities"], json!([1, 1]));
    assert_eq!(
        ok_json(&["truncate", "--demo", "section3-module", "--degree", "1,1"])["linear"],
        json!(true)
    );
    assert_eq!(
        ok_json(&["truncate", "--demo", "section3-module", "--degree", "0,0"])["linear"],
        json!(false)
    );
}

#[test]
fn power_matrix_goldens() {
    assert_eq!(
        ok_json(&["bounds", "--demo", "example21-d3"])["regularity"],
        json!(5)
    );
    let v = ok_json(&[
        "find-region",
        "--demo",
        "example21-d3",
        "--box",
        "0,0..10,5",
    ]);
    assert_eq!(v["region"], json!([[3, 3], [8, 2]]));
    let neg = ok_json(&[
        "find-region",
        "--demo",
        "irrelevant-ideal",
        "--box",
        "-1,-1..4,4",
    ]);
    assert_eq!(neg["region"], json!([[0, 1], [1, 0]]));
    let seq = ok_json(&[
        "find-region",
        "--demo",
        "example21-d3",
        "--box",
        "0,0..10,5",
        "--strategy",
        "sequential",
    ]);
    assert_eq!(seq, v);
}

#[test]
fn zero_matrix_over_the_ring() {
    let path = temp_file("zero.json", &job(json!([["0"]])));
    let v = ok_json(&["resolve", "--job", path.to_str().unwrap()]);
    assert_eq!(v["ranks"], json!([1]));
    assert_eq!(v["regularity"], json!(0));
}

#[test]
fn output_is_deterministic() {
    for cmd in ["resolve", "support-tor", "linear-truncations", "bounds"] {
        let a = bin(&[cmd, "--demo", "example21-d2"]);
        let b = bin(&[cmd, "--demo", "example21-d2"]);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{cmd}");
    }
    let pretty = bin(&["resolve", "--demo", "irrelevant-ideal", "--pretty"]);
    let table = String::from_utf8(pretty.stdout).unwrap();
    assert!(table.starts_with("ranks: 1 6 9 5 1\n"), "{table}");
    assert!(table.contains("3a^2b+6ab^2"), "{table}");
}

#[test]
fn job_files_round_trip() {
    for name in demos::NAMES {
        let m = demos::by_name(name).unwrap();
        let text = serde_json::to_string(&JobFile::of_module(&m)).unwrap();
        let path = temp_file(&format!("{name}.json"), &text);
        let from_file = ok_json(&["resolve", "--job", path.to_str().unwrap()]);
        assert_eq!(from_file, ok_json(&["resolve", "--demo", name]), "{name}");
        let back = JobFile::from_json(&text).unwrap();
        assert_eq!(back, JobFile::of_module(&m));
        assert_eq!(back.load().unwrap().module.betti(), m.betti());
    }
}

#[test]
fn parse_errors_exit_with_two() {
    let bad = temp_file("bad.json", "{\"ring\":");
    let (code, msg) = failure(&["resolve", "--job", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(msg.starts_with("E_PARSE: "), "{msg}");

    let poly = temp_file("poly.json", &job(json!([["x(0,0) + * x(1,0)"]])));
    let (code, msg) = failure(&["resolve", "--job", poly.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(msg.contains("entry (0,0)") && msg.contains("1:10"), "{msg}");

    let (code, msg) = failure(&["resolve"]);
    assert_eq!(code, 2);
    assert!(msg.starts_with("E_PARSE: "));
    let (code, _) = failure(&["resolve", "--demo", "irrelevant-ideal", "--box", "0,0-3,3"]);
    assert_eq!(code, 2);
    let (code, _) = failure(&["no-such-command"]);
    assert_eq!(code, 2);
}

#[test]
fn validation_errors_exit_with_three() {
    let path = temp_file("inhom.json", &job(json!([["x(0,0) + x(1,0)^2"]])));
    let (code, msg) = failure(&["resolve", "--job", path.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert!(
        msg.starts_with("E_VALIDATION: ") && msg.contains("entry (0,0)"),
        "{msg}"
    );

    let wrong_degree = temp_file("deg.json", &job(json!([["x(1,0)"]])));
    let (code, _) = failure(&["resolve", "--job", wrong_degree.to_str().unwrap()]);
    assert_eq!(code, 3);

    let (code, msg) = failure(&["truncate", "--demo", "section3-module", "--degree", "1,1,1"]);
    assert_eq!(code, 3);
    assert!(msg.starts_with("E_VALIDATION: "));
    let (code, _) = failure(&[
        "find-region",
        "--demo",
        "section3-module",
        "--box",
        "3,3..0,0",
    ]);
    assert_eq!(code, 3);
}
