use std::process::{Command, Output};

fn branchmod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_branchmod")).args(args).output().expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["dim", "--char", "8,20,30,35", "--generic", "--seed", "3"][..],
        &["tree", "--char", "5,13", "--direction", "xy"][..],
        &["saito", "--char", "3,4", "--generic", "--seeds", "2", "--direction", "x"][..],
    ] {
        let a = branchmod(args);
        let b = branchmod(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn report_envelope() {
    let o = branchmod(&["invariants", "--pairs", "(2,3),(2,7)"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["tool"], "branchmod");
    assert_eq!(v["command"], "invariants");
    assert_eq!(v["input"]["source"], "pairs");
    assert_eq!(v["result"]["char_exponents"], serde_json::json!([4, 6, 7]));
}

#[test]
fn parse_errors_exit_2_with_column() {
    let o = branchmod(&["invariants", "--equation", "y^2 - x^3 + ?"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("column 13"), "{}", stderr(&o));
}

#[test]
fn invalid_input_exits_2() {
    for args in [
        &["invariants"][..],
        &["invariants", "--char", "5,13", "--pairs", "(5,13)"][..],
        &["invariants", "--char", "4,6"][..],
        &["tree", "--char", "2,3", "--dparam", "x=0; y=t+t^2", "--direction", "x"][..],
        &["tree", "--param", "x=t; y=t^2"][..],
        &["bogus"][..],
    ] {
        assert_eq!(branchmod(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn exhausted_bounds_exit_4() {
    let o = branchmod(&["saito", "--char", "4,5", "--degree-bound", "1", "--jet-order", "6"]);
    assert_eq!(o.status.code(), Some(4), "{}", stderr(&o));
}

#[test]
fn help_and_version_succeed() {
    assert_eq!(branchmod(&["--help"]).status.code(), Some(0));
    let v = branchmod(&["--version"]);
    assert_eq!(v.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&v.stdout).contains(env!("CARGO_PKG_VERSION")));
}

#[test]
fn dot_export() {
    let dir = std::env::temp_dir().join(format!("branchmod-dot-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("graph.dot");
    let o = branchmod(&["resolve", "--equation", "y^5-x^13", "--dot", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("graph dual_graph {"));
    assert_eq!(dot.matches(" -- ").count(), 6);
    std::fs::remove_dir_all(&dir).ok();
}
