use std::process::{Command, Output};

use serde_json::Value;

fn chow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chow"))
        .args(args)
        .env_remove("CHOW_SEED")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = chow(&all);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn ring_descriptions() {
    let v = json(&["ring", "--k", "1", "--r", "2", "--d", "1"]);
    assert_eq!(v["generators"][0]["name"], "s1");
    assert_eq!(v["relations"][0]["text"], "s1^3");
    assert_eq!(v["poincare_dims"], serde_json::json!([1, 1, 1]));

    let v = json(&["ring", "--k", "1", "--r", "3", "--d", "2"]);
    let rels: Vec<&str> = v["relations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["text"].as_str().unwrap())
        .collect();
    assert_eq!(rels, ["s1^3 - 4*s1*s2", "s1^2*s2 - 2*s2^2"]);

    let v = json(&["ring", "--k", "2", "--r", "2", "--d", "5"]);
    assert_eq!(v["generators"], serde_json::json!([]));
    assert_eq!(v["poincare_dims"], serde_json::json!([1]));
}

#[test]
fn products() {
    let out = chow(&[
        "multiply", "--k", "1", "--r", "3", "--d", "1", "sigma(1)", "sigma(1)",
    ]);
    assert!(stdout(&out).contains("σ(2) + σ(1,1)"));

    // s1 * s1 is already a normal form at d = 2
    let v = json(&["multiply", "--k", "1", "--r", "3", "--d", "2", "s1", "s1"]);
    assert_eq!(
        v["terms"],
        serde_json::json!([{"smonomial": [1, 1], "coeff": "1"}])
    );

    let x = r#"{"k":1,"r":3,"d":2,"terms":[{"smonomial":[1,2],"coeff":"3/2"}]}"#;
    let v = json(&["multiply", "--k", "1", "--r", "3", "--d", "2", "1", x]);
    assert_eq!(
        v["terms"],
        serde_json::json!([{"smonomial": [1, 2], "coeff": "3/2"}])
    );
}

#[test]
fn lambda_round_trip() {
    let v = json(&["lambda", "--k", "1", "--r", "3", "--d", "2", "s1"]);
    assert_eq!(
        v["terms"],
        serde_json::json!([{"partition": [1], "coeff": "4"}])
    );
    let v = json(&[
        "lambda-inv",
        "--k",
        "1",
        "--r",
        "3",
        "--d",
        "2",
        "sigma(1,1)",
    ]);
    assert_eq!(
        v["terms"],
        serde_json::json!([
            {"smonomial": [2], "coeff": "-1/8"},
            {"smonomial": [1, 1], "coeff": "1/16"}
        ])
    );
}

#[test]
fn pushforward_agrees() {
    let v = json(&[
        "pushforward",
        "--k",
        "1",
        "--n",
        "5",
        "--power",
        "3",
        "--d",
        "2",
    ]);
    assert_eq!(v["agrees"], true);
    assert_eq!(v["pushforward"], v["p_class"]);
}

#[test]
fn verify_suites_pass() {
    let out = chow(&["verify", "series", "--k", "3", "--order", "12"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&["verify", "basis", "--r", "5", "--d", "3"]);
    assert_eq!(v["passed"], true);
    let last = v["cases"].as_array().unwrap().last().unwrap().clone();
    assert_eq!(last["name"], "r=5 d=3");
    assert!(last["detail"]
        .as_str()
        .unwrap()
        .starts_with("15 basis elements"));
    for suite in ["relations", "duality", "pushforward"] {
        assert_eq!(chow(&["verify", suite]).status.code(), Some(0), "{suite}");
    }
}

#[test]
fn git_suite_echoes_the_seed() {
    let out = chow(&[
        "verify",
        "git",
        "--k",
        "1",
        "--d",
        "2",
        "--q",
        "3",
        "--samples",
        "20",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("seed    20240917"));

    let out = Command::new(env!("CARGO_BIN_EXE_chow"))
        .args([
            "verify", "git", "--d", "1", "--tuples", "3", "--format", "json",
        ])
        .env("CHOW_SEED", "99")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["seed"], 99);
    // an explicit seed wins over the environment
    let out = Command::new(env!("CARGO_BIN_EXE_chow"))
        .args([
            "verify", "git", "--d", "1", "--tuples", "3", "--seed", "7", "--format", "json",
        ])
        .env("CHOW_SEED", "99")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["seed"], 7);
}

#[test]
fn output_is_deterministic() {
    let args = [
        "verify",
        "lambda",
        "--k",
        "1",
        "--r",
        "3",
        "--d",
        "2",
        "--samples",
        "10",
    ];
    assert_eq!(chow(&args).stdout, chow(&args).stdout);
}

#[test]
fn stability_reports() {
    let st = r#"{"k":1,"r":1,"d":1,"forms":[[{"exponents":[1,0],"coeff":"1"}],[{"exponents":[0,1],"coeff":"1"}]]}"#;
    let v = json(&["stability", "--q", "3", st]);
    assert_eq!(v["basepoint"]["status"], "free");
    assert_eq!(v["report"]["verdict"], "torus-probed stable");
    assert_eq!(v["report"]["seed"], 20240917);

    let shared = r#"{"k":1,"r":1,"d":2,"forms":[[{"exponents":[2,0],"coeff":"1"}],[{"exponents":[1,1],"coeff":"1"}]]}"#;
    let out = chow(&["stability", "--q", "3", shared]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("basepoint"));
}

#[test]
fn usage_errors_exit_2() {
    let cases: &[&[&str]] = &[
        &["ring", "--k", "0", "--r", "2"],
        &["ring", "--k", "3", "--r", "2"],
        &["ring", "--k", "1", "--r", "2", "--d", "0"],
        &["verify", "nope"],
        &["verify", "basis", "--r", "40"],
        &["multiply", "--k", "1", "--r", "3", "--d", "2", "s1 +", "s1"],
        &["multiply", "--k", "1", "--r", "3", "--d", "2", "s3", "s1"],
        &[
            "multiply",
            "--k",
            "1",
            "--r",
            "3",
            "--d",
            "2",
            r#"{"k":1,"r":4,"d":2,"terms":[]}"#,
            "s1",
        ],
        &["stability", "--q", "2", "{}"],
    ];
    for args in cases {
        assert_eq!(chow(args).status.code(), Some(2), "{args:?}");
    }
}
