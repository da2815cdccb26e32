use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn johnson(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_johnson"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn johnson_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_johnson"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

#[test]
fn ranks_suite_at_genus_five() {
    let o = johnson(&["verify", "--suite", "ranks", "--genus", "5", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["status"], "pass");
    let r2 = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "ranks/r2-binomial")
        .unwrap();
    let g5 = r2["data"].as_array().unwrap().iter().find(|row| row["g"] == 5).unwrap();
    assert_eq!(g5["r"], 10);
}

#[test]
fn jcom_suite_reports_the_four_examples() {
    let o = johnson(&["verify", "--suite", "jcom", "--genus", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    for k in 1..=4 {
        assert!(out.contains(&format!("PASS  jcom/example-{k}")), "{out}");
    }
}

#[test]
fn exact_sequence_at_genus_one() {
    let o = johnson(&["verify", "--suite", "exact-seq", "--genus", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("rank 0 = C(2,3) = 0"));
}

#[test]
fn json_report_is_deterministic_and_sorted() {
    let args = ["verify", "--suite", "km-filtration", "--genus", "3", "--json"];
    let (a, b) = (json(&johnson(&args)), json(&johnson(&args)));
    let strip = |mut v: Value| {
        v["wall_time_ms"] = Value::Null;
        v
    };
    assert_eq!(strip(a.clone()), strip(b));
    let names: Vec<&str> = a["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(johnson(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(johnson(&["verify", "--suite", "jcom", "--genus", "9"]).status.code(), Some(2));
    assert_eq!(johnson(&["verify", "--cutoff", "12"]).status.code(), Some(2));
    assert_eq!(johnson(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(johnson_stdin(&["invariants", "-"], "{ not json").status.code(), Some(2));
}

#[test]
fn budget_can_be_raised_explicitly() {
    let o = johnson(&["verify", "--suite", "exact-seq", "--genus", "5", "--budget-genus", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("rank 120 = C(10,3) = 120"));
}

#[test]
fn identity_map_has_trivial_invariants() {
    let o = johnson_stdin(
        &["invariants", "-", "--json"],
        r#"{"genus":2,"boundary":"longitude","images":{}}"#,
    );
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["torelli"], true);
    assert_eq!(v["weight_degree"], "identity");
    assert_eq!(v["tau"], "0");
    for j in v["jn"].as_array().unwrap() {
        assert_eq!(j["value"], "0");
    }
}

#[test]
fn kappa_of_a12_lies_in_the_johnson_kernel() {
    let o = johnson(&["invariants", "--braid", "A12", "--strands", "2", "--embed", "kappa", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["torelli"], true);
    assert_eq!(v["tau"], "0");
    assert_eq!(v["weight_degree"], "2");
}

#[test]
fn psi_of_a12_fixes_the_lagrangian() {
    let o = johnson(&["invariants", "--braid", "A12", "--strands", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["fixes_lagrangian"], true);
    assert_eq!(v["torelli"], false);
    assert_eq!(v["cal_j"][0], "0");
    let m = &v["symplectic_matrix"];
    // (I -A; 0 I) with A the linking matrix, whose off-diagonal entries are -1
    assert_eq!(m[0][4], "1");
    assert_eq!(m[1][3], "1");
    assert_eq!(m[0][3], "0");
    assert_eq!(v["linking_matrix"][0][1], "-1");
}

#[test]
fn braid_json_input() {
    let dir = std::env::temp_dir().join(format!("johnson-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("braid.json");
    std::fs::write(&path, r#"{"strands":3,"word":"A12 A23 A12^-1 A23^-1"}"#).unwrap();
    let o = johnson(&["invariants", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("Torelli: yes"), "{out}");
    assert!(out.contains("tau = "), "{out}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn rank_table_differences() {
    let o = johnson(&["ranks", "--genus", "3", "--min-degree", "3", "--max-degree", "4", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let diff = |g: u64, n: u64| {
        v["rows"]
            .as_array()
            .unwrap()
            .iter()
            .find(|r| r["g"] == g && r["n"] == n)
            .unwrap()["difference"]
            .as_i64()
            .unwrap()
    };
    assert_eq!(diff(2, 3), 1);
    assert_eq!(diff(3, 3), 4);
    assert_eq!(diff(3, 4), 3);
}
