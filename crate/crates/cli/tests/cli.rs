use std::process::{Command, Output};

fn mvforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mvforge")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn term_eval_prints_exact_value() {
    let o = mvforge(&["term", "eval", "-n", "1", "-e", "x1 (+) x1", "-p", "1/3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "2/3");
    let o = mvforge(&["term", "eval", "-n", "2", "-e", "x1 ⊙ x2", "-p", "3/4,1/2"]);
    assert_eq!(stdout(&o).trim(), "1/4");
}

#[test]
fn term_eq_accepts_short_spellings() {
    let o = mvforge(&["term", "eq", "-n", "2", "-e1", "x1 (+) x2", "-e2", "x2 (+) x1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "true");
    let o = mvforge(&["term", "eq", "-n", "1", "--e1", "x1", "--e2", "~x1"]);
    assert_eq!(stdout(&o).trim(), "false");
}

#[test]
fn census_table() {
    let o = mvforge(&["census", "-n", "1", "-b", "8"]);
    assert!(o.status.success());
    let rows: Vec<String> = stdout(&o).lines().skip(1).map(str::to_owned).collect();
    assert_eq!(rows, ["1\t2", "2\t1", "3\t2", "4\t2", "5\t4", "6\t2", "7\t6", "8\t4"]);
    let o = mvforge(&["census", "-n", "2", "-b", "3", "--zmap", "x1 ^ x2; x1 v x2"]);
    assert_eq!(stdout(&o).lines().nth(1), Some("1\t4\t3"));
}

#[test]
fn fsb_json_and_dot() {
    let o = mvforge(&["fsb", "--depth", "2", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let labels: Vec<u64> = v["rows"][2].as_array().unwrap().iter().map(|x| x["label"].as_u64().unwrap()).collect();
    assert_eq!(labels, [1, 3, 2, 3, 1]);
    assert_eq!(v["edges"].as_array().unwrap().len(), 11);
    let dot = stdout(&mvforge(&["fsb", "--depth", "6", "--dot"]));
    assert!(dot.starts_with("digraph fsb {"));
    assert!(dot.contains("label=\"2/5 (5)\""));
}

#[test]
fn fsb_depth_cap_and_override() {
    let o = mvforge(&["fsb", "--depth", "25"]);
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_mvforge"))
        .args(["fsb", "--depth", "3"])
        .env("MVFORGE_MAX_DEPTH", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn separate_and_its_failure() {
    let o = mvforge(&["separate", "-n", "1", "-e", "(x1 (+) x1) (.) x1"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("point: (1/1)"), "{out}");
    assert!(out.contains("d: 1"));
    let o = mvforge(&["separate", "-n", "1", "-e", "x1 ^ ~x1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("d: 2"));
    let o = mvforge(&["separate", "-n", "1", "-e", "0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn quotient_descriptors() {
    let out = stdout(&mvforge(&["quotient", "--rho", "2/5"]));
    assert!(out.contains("descriptor: FiniteDim(5)"));
    assert!(out.contains("first depth: 3"));
    let out = stdout(&mvforge(&["quotient", "--theta", "golden"]));
    assert!(out.contains("descriptor: EffrosShen(-1/2+1/2*sqrt(5))"));
    assert!(out.contains("prime ideals: 1"));
    assert_eq!(mvforge(&["quotient", "--theta", "1/2+0*sqrt(5)"]).status.code(), Some(2));
    assert_eq!(mvforge(&["quotient"]).status.code(), Some(2));
}

#[test]
fn demos_pass() {
    let out = stdout(&mvforge(&["demo", "nonhopf-quadrant"]));
    assert!(out.contains("σ(x) = x"));
    assert!(out.contains("σ((y-x) v 0) = y"));
    assert!(out.contains("σ((x-y) v 0) = 0"));
    assert!(out.contains("surjective: true, injective: false"));
    let o = mvforge(&["demo", "nonhopf-eigen"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["holds"], true);
    assert_eq!(v["lambda"], "3/2-1/2*sqrt(5)");
    assert_eq!(v["negative_control"]["holds"], false);
    for d in ["chang-germ", "shift"] {
        assert!(mvforge(&["demo", d]).status.success(), "{d}");
    }
}

#[test]
fn checks() {
    let o = mvforge(&["check", "axioms", "--trials", "20", "--seed", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("failures: 0"));
    let v: serde_json::Value = serde_json::from_str(&stdout(&mvforge(&["check", "hopfian", "L3xL2"]))).unwrap();
    assert_eq!(v["endo_count"], 2);
    assert_eq!(v["hopfian"], true);
    let v: serde_json::Value = serde_json::from_str(&stdout(&mvforge(&["check", "znk", "[[2,1],[1,1]]"]))).unwrap();
    assert_eq!(v["surjective"], true);
    assert_eq!(mvforge(&["check", "znk", "[[1,2]]"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(mvforge(&["term", "eval", "-n", "1", "-e", "x1 +", "-p", "1"]).status.code(), Some(2));
    assert_eq!(mvforge(&["term", "eval", "-n", "1", "-e", "x2", "-p", "1"]).status.code(), Some(2));
    assert_eq!(mvforge(&["term", "eval", "-n", "1", "-e", "x1", "-p", "2"]).status.code(), Some(2));
    assert_eq!(mvforge(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let a = stdout(&mvforge(&["demo", "nonhopf-eigen"]));
    let b = stdout(&mvforge(&["demo", "nonhopf-eigen"]));
    assert_eq!(a, b);
}
