use std::path::PathBuf;
use std::process::{Command, Output};

fn dehnkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dehnkit"))
        .args(args)
        .env_remove("DEHNKIT_CONFIG_PATH")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dehnkit-cli-{name}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn lens_text_report() {
    let o = dehnkit(&["report", "--scenario", "sphere-lens", "--p", "5", "--q", "2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("verdict: Obstructed"));
    assert!(out.contains("{1,4}"));
    let o = dehnkit(&["report", "--scenario", "sphere-lens", "--p", "5", "--q", "1"]);
    assert!(o.status.success(), "a negative verdict is still a successful run");
    assert!(stdout(&o).contains("verdict: NotObstructed"));
}

#[test]
fn json_report_is_schema_shaped() {
    let o = dehnkit(&[
        "report", "--scenario", "torus-solid", "--n", "-3", "--knot-j", "left-trefoil", "--knot-k", "left-trefoil",
        "--format", "json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema_version"], "dehnkit.report/1");
    assert_eq!(v["scenario"]["scenario"], "torus-solid");
    assert_eq!(v["scenario"]["n"], -3);
    assert_eq!(v["verdict"]["kind"], "Obstructed");
    for key in ["trace", "hypotheses", "justification", "citations"] {
        assert!(v[key].is_array(), "{key}");
    }
    for step in v["trace"].as_array().unwrap() {
        assert!(step["operation"].is_string() && step.get("inputs").is_some() && step.get("output").is_some());
    }
}

#[test]
fn byte_identical_reruns() {
    for args in [
        &["report", "--scenario", "twist-extension", "--p", "3", "--q", "5", "--format", "json"][..],
        &["report", "--scenario", "torus-top-vs-smooth"][..],
        &["report", "--scenario", "sphere-smooth-e8h", "--format", "json"][..],
    ] {
        let a = dehnkit(args);
        let b = dehnkit(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn errors_exit_nonzero() {
    let cases: &[&[&str]] = &[
        &["report", "--scenario", "sphere-ball"],
        &["report", "--scenario", "sphere-lens", "--p", "5"],
        &["report", "--scenario", "sphere-lens", "--p", "5", "--q", "2", "--format", "yaml"],
        &["report", "--scenario", "torus-solid", "--n", "1", "--knot-j", "granny", "--knot-k", "unknot"],
        &["report", "--scenario", "sphere-lens", "--p", "6", "--q", "3"],
        &["report"],
    ];
    for args in cases {
        let o = dehnkit(args);
        assert!(!o.status.success(), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn config_file_and_overrides() {
    let dir = temp_dir("config");
    let path = dir.join("solid.json");
    std::fs::write(
        &path,
        r#"{"scenario": "torus-solid", "n": 0, "knot_j": {"name": "left-trefoil"}, "knot_k": {"seifert": [[-1, 1], [0, -1]]}}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let o = dehnkit(&["report", "--config", p]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("verdict: Obstructed"));
    let o = dehnkit(&["report", "--config", p, "--knot-k", "unknot"]);
    assert!(stdout(&o).contains("verdict: Inconclusive"));

    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"scenario": "sphere-lens", "p": 5, "q": 2, "colour": "red"}"#).unwrap();
    assert!(!dehnkit(&["report", "--config", bad.to_str().unwrap()]).status.success());
}

#[test]
fn config_search_path() {
    let dir = temp_dir("search");
    std::fs::write(dir.join("lens.json"), r#"{"scenario": "sphere-lens", "p": 7, "q": 3}"#).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_dehnkit"))
        .args(["report", "--config", "lens.json"])
        .env("DEHNKIT_CONFIG_PATH", &dir)
        .current_dir(std::env::temp_dir())
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("verdict: NotObstructed"));
}

#[test]
fn lists_scenarios() {
    let o = dehnkit(&["scenarios"]);
    assert_eq!(stdout(&o).lines().count(), 6);
}
