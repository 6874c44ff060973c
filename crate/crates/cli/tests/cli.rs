use std::process::{Command, Output};

use serde_json::Value;

fn gtr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gtr")).args(args).env("GTR_THREADS", "2").output().expect("gtr runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let o = gtr(&all);
    (o.status.code().unwrap(), serde_json::from_str(&stdout(&o)).expect("valid JSON"))
}

fn schema() -> jsonschema::JSONSchema {
    let raw = include_str!("../schema/gtr-output.schema.json");
    let v: Value = serde_json::from_str(raw).unwrap();
    jsonschema::JSONSchema::compile(&v).expect("schema compiles")
}

#[test]
fn roots_a2() {
    let (code, v) = json(&["roots", "--type", "A2"]);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(r["positive_roots"].as_array().unwrap().len(), 3);
    assert_eq!(r["theta"], serde_json::json!([1, 1]));
    assert_eq!(r["weyl_vector"], serde_json::json!(["1", "1"]));
}

#[test]
fn letter_and_rank() {
    let (code, v) = json(&["roots", "--type", "B", "--rank", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["positive_roots"].as_array().unwrap().len(), 9);
}

#[test]
fn sl3_table_check_text() {
    let o = gtr(&["sl3", "table-check", "--lambda", "1,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("9/9 operators match"), "{}", stdout(&o));
}

#[test]
fn verify_all_g2_seed_7() {
    let o = gtr(&["verify-all", "--type", "G2", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn verify_all_is_deterministic_across_thread_counts() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_gtr"))
            .args(["verify-all", "--type", "A2", "--seed", "11", "--json"])
            .env("GTR_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn eigen_is_deterministic() {
    let a = gtr(&["eigen", "--seed", "5", "--json"]);
    let b = gtr(&["eigen", "--seed", "5", "--json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["roots", "--type", "Q4"],
        vec!["roots"],
        vec!["sl3", "table-check", "--lambda", "1,2,3"],
        vec!["realize", "--type", "A2", "--lambda", "1+i,0"],
        vec!["no-such-command"],
        vec!["sl3", "intertwiner", "--case", "s7"],
    ] {
        assert_eq!(gtr(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn eigen_reads_a_single_operator() {
    let dir = std::env::temp_dir().join(format!("gtr-eigen-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("op.json");
    std::fs::write(&path, r#"{"grades":[1,1],"matrix":[["2","1"],["0","3"]]}"#).unwrap();
    let (code, v) = json(&["eigen", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let ev: Vec<&str> = v["result"]["eigenspaces"].as_array().unwrap().iter().map(|s| s["eigenvalue"].as_str().unwrap()).collect();
    assert_eq!(ev, ["2", "3"]);
    // lower-triangular entry breaks the filtration
    std::fs::write(&path, r#"{"grades":[1,1],"matrix":[["2","0"],["1","3"]]}"#).unwrap();
    assert_eq!(gtr(&["eigen", "--input", path.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn json_output_matches_schema() {
    let s = schema();
    let cases: &[&[&str]] = &[
        &["roots", "--type", "A2"],
        &["roots", "--type", "G2"],
        &["algebra", "--type", "A2"],
        &["realize", "--type", "A2", "--lambda", "1/2,-1", "--element", "h_theta"],
        &["realize", "--type", "B2", "--shift", "rho", "--sigma"],
        &["wmodule", "--type", "A2", "--lambda", "1,1", "weights", "--a=-2,0"],
        &["wmodule", "--type", "A2", "--bound", "2", "weights"],
        &["wmodule", "--type", "B2", "basis", "--a=1,-1"],
        &["wmodule", "--type", "A2", "--bound", "3", "casimir"],
        &["wmodule", "--type", "A2", "--lambda", "1,1", "gamma-mult", "--a=-2,0"],
        &["wmodule", "--type", "A2", "--bound", "3", "cyclic"],
        &["verma", "--type", "A2", "--lambda", "1,0", "--bound", "3", "--word", "1,2"],
        &["sl3", "table-check", "--lambda", "1/2,1/3"],
        &["sl3", "simplicity", "--lambda", "1,1", "--bound", "3"],
        &["sl3", "intertwiner", "--lambda", "1,2", "--case", "long"],
        &["sl3", "ideals"],
        &["eigen", "--seed", "2"],
        &["verify-all", "--type", "A1"],
    ];
    for args in cases {
        let (code, v) = json(args);
        assert!(code == 0, "{args:?} exited {code}");
        if let Err(errs) = s.validate(&v) {
            let msgs: Vec<String> = errs.map(|e| e.to_string()).collect();
            panic!("{args:?}: {msgs:?}");
        }
        assert_eq!(v["ok"], Value::Bool(true), "{args:?}");
    }
}

#[test]
fn gamma_multiplicity_matches_oracle() {
    let (code, v) = json(&["wmodule", "--type", "A2", "--lambda", "1,1", "gamma-mult", "--a=-2,0"]);
    assert_eq!(code, 0);
    let m = &v["result"]["multiplicity"];
    assert_eq!(m["dimension"], m["oracle"]);
    assert_eq!(m["dimension"], 2);
}

#[test]
fn long_intertwiner_opposite_sign_fails() {
    let (code, v) = json(&["sl3", "intertwiner", "--lambda", "1,2", "--case", "long"]);
    assert_eq!(code, 0);
    assert!(!v["result"]["opposite_sign_failures"].as_array().unwrap().is_empty());
}
