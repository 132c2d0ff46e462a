use std::path::PathBuf;
use std::process::{Command, Output};

fn avatar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_avatar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden/v1")
        .join(name);
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn avatar_build_matches_golden_files() {
    let base = ["avatar-build", "-p", "u+1", "-q", "w+1"];
    assert_eq!(stdout(&avatar(&base)), golden("avatar_build_u1_w1.txt"));
    let json = avatar(&[&base[..], &["--format", "json"]].concat());
    assert_eq!(stdout(&json), golden("avatar_build_u1_w1.json"));
    assert_eq!(
        stdout(&avatar(&[&base[..], &["--json"]].concat())),
        golden("avatar_build_u1_w1.json")
    );
    let ideal = avatar(&[&base[..], &["--format", "ideal"]].concat());
    assert_eq!(stdout(&ideal), golden("avatar_build_u1_w1.ideal"));
}

#[test]
fn hamilton_classification() {
    let out = avatar(&["is-division", "-a", "-1", "-b", "-1", "--json"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), golden("is_division_hamilton.json"));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        v,
        serde_json::json!({"division": true, "ramified": ["inf", 2]})
    );
}

#[test]
fn norm_and_products() {
    let out = avatar(&["norm", "-a", "-1", "-b", "-1", "-e", "1 + 1*i + 1*j + 1*k"]);
    assert_eq!(stdout(&out), "4\n");
    let out = avatar(&["mul", "-a", "-1", "-b", "-1", "-e", "i", "-e", "j"]);
    assert_eq!(stdout(&out), "0 + 0*i + 0*j + 1*k\n");
    let out = avatar(&["inverse", "-a", "2", "-b", "3", "-e", "1 + i", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["x0"], "-1");
    assert_eq!(v["x"], "1");
}

#[test]
fn conic_commands() {
    let out = avatar(&["conic-point", "-a", "1", "-b", "1", "--json"]);
    assert_eq!(stdout(&out), "{\"x\":\"0\",\"y\":\"1\",\"z\":\"1\"}\n");
    let out = avatar(&["parametrize", "-a", "1", "-b", "1"]);
    assert_eq!(stdout(&out).lines().count(), 3);
    let out = avatar(&["parametrize", "-a", "1", "-b", "-1", "--point", "1,1,0"]);
    assert!(out.status.success());
    let out = avatar(&[
        "ring-reduce",
        "-a",
        "-1",
        "-b",
        "-1",
        "-p",
        "x^2 + y^2 + z^2",
    ]);
    assert_eq!(stdout(&out), "0\n");
}

#[test]
fn checks() {
    assert_eq!(
        stdout(&avatar(&["avatar-check", "-a", "-1", "-b", "3/2"])),
        "true\n"
    );
    assert_eq!(
        stdout(&avatar(&["avatar-check", "-p", "u^2-u-1", "-q", "w+2"])),
        "true\n"
    );
    assert!(
        avatar(&["isomorphic", "-a", "-1", "-b", "-1", "-a", "-1", "-b", "-3"])
            .status
            .success()
    );
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| avatar(args).status.code();
    assert_eq!(code(&["frobnicate"]), Some(2));
    assert_eq!(code(&["norm", "-a", "1"]), Some(2));
    assert_eq!(code(&["avatar-build", "-p", "u+", "-q", "w+1"]), Some(2));
    assert_eq!(code(&["avatar-build", "-p", "x+1", "-q", "w+1"]), Some(2));
    assert_eq!(
        code(&["avatar-build", "-p", "u+1", "-q", "w+1", "--format", "tex"]),
        Some(2)
    );
    assert_eq!(code(&["norm", "-a", "1/0", "-b", "1", "-e", "1"]), Some(2));
    // domain errors
    assert_eq!(code(&["avatar-build", "-p", "u", "-q", "w+1"]), Some(1));
    assert_eq!(code(&["conic-point", "-a", "-1", "-b", "-1"]), Some(1));
    assert_eq!(
        code(&["inverse", "-a", "1", "-b", "1", "-e", "1 + i"]),
        Some(1)
    );
    assert_eq!(code(&["norm", "-a", "0", "-b", "1", "-e", "1"]), Some(1));
}

#[test]
fn domain_errors_are_structured() {
    let out = avatar(&["conic-point", "-a", "-1", "-b", "-1", "--json"]);
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "no_rational_point");
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["avatar-build", "-p", "u^2-2", "-q", "w^2+2", "--json"][..],
        &["ramified", "-a", "-7", "-b", "15"][..],
        &["selftest", "--depth", "quick", "--json"][..],
    ] {
        assert_eq!(avatar(args).stdout, avatar(args).stdout, "{args:?}");
    }
}

#[test]
fn selftest_detects_sign_error() {
    assert!(avatar(&["selftest"]).status.success());
    let out = avatar(&["selftest", "--mutate-symbol-at-two"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL reciprocity"));
}
