use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superstructure"))
        .args(args)
        .env_remove("SUPERSTRUCTURE_JOBS")
        .output()
        .expect("spawn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn eval_examples() {
    let o = run(&["eval", "[d1, x1.d2]", "--series", "vect", "--n", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "d2");
    assert_eq!(stdout(&run(&["eval", "div(x1.d1)", "--n", "2"])).trim(), "-1");
    assert_eq!(stdout(&run(&["eval", "pb(x1, e1)", "--series", "h", "--n", "4"])).trim(), "-1");
    assert_eq!(stdout(&run(&["eval", "[d2, x1.x2.d3]"])).trim(), "-x1.d3");
}

#[test]
fn eval_reduces_modulo_p() {
    let o = run(&["eval", "div(x1.d1)", "--n", "2", "--field", "f5"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "-1");
    assert_eq!(stdout(&run(&["eval", "div(x1.d1 + x1.d1 + x1.d1)", "--n", "2", "--field", "f5"])).trim(), "2");
    assert_eq!(run(&["eval", "1/5 x1.d1", "--n", "2", "--field", "f5"]).status.code(), Some(2));
}

#[test]
fn parse_error_exits_two() {
    let o = run(&["eval", "[d1, x1.d2", "--series", "vect", "--n", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("position 10"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["tables", "9"]).status.code(), Some(2));
    assert_eq!(run(&["subalg", "msc"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["--json", "--text", "tables", "2"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_superstructure"))
        .args(["tables", "2"])
        .env("SUPERSTRUCTURE_JOBS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_exit_codes_follow_expectation() {
    assert_eq!(run(&["check", "msc", "--series", "vect", "--n", "3"]).status.code(), Some(0));
    let o = run(&["check", "ms0", "--series", "vect", "--n", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("adjoining d1"));
    assert_eq!(run(&["check", "ms0", "--series", "vect", "--n", "2", "--expect", "not-maximal"]).status.code(), Some(0));
    assert_eq!(run(&["check", "ms0", "--series", "vect", "--n", "2", "--expect", "any"]).status.code(), Some(0));
}

#[test]
fn check_accepts_json_input() {
    let dir = std::env::temp_dir().join(format!("superstructure-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("msc.json");
    let o = run(&["subalg", "msc", "--series", "vect", "--n", "3", "--json", "--out", file.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).is_empty());
    let o = run(&["check", "msc", "--series", "vect", "--n", "3", "--input", file.to_str().unwrap(), "--json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"]["status"], "maximal");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn subalg_json_shape() {
    let o = run(&["subalg", "msc", "--series", "vect", "--n", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["name"], "msc");
    let dims: Vec<(i64, usize)> = v["components"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["degree"].as_i64().unwrap(), c["basis"].as_array().unwrap().len()))
        .collect();
    assert_eq!(dims, vec![(-1, 3), (0, 6), (1, 4), (2, 1)]);
}

#[test]
fn small_case_diagnostic() {
    let o = run(&["subalg", "ms0", "--series", "h", "--n", "4"]);
    assert!(o.status.success());
    assert!(stderr(&o).contains("note: not maximal: adjoining x1"), "{}", stderr(&o));
    let o = run(&["subalg", "ms0", "--series", "h", "--n", "4", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["diagnostic"].as_str().unwrap().starts_with("not maximal"));
    let o = run(&["subalg", "ms0", "--series", "vect", "--n", "3"]);
    assert!(stderr(&o).is_empty());
}

#[test]
fn emitted_rows_match_the_tables() {
    let t2 = stdout(&run(&["tables", "2"]));
    let row = stdout(&run(&["subalg", "msc", "--series", "vect", "--n", "2", "--emit-table"]));
    let lines: Vec<&str> = row.lines().collect();
    assert_eq!(lines[0], t2.lines().nth(1).unwrap());
    assert!(t2.lines().any(|l| l == lines[1]));
    let t3 = stdout(&run(&["tables", "3"]));
    let row = stdout(&run(&["subalg", "msc", "--series", "hprime", "--n", "4", "--emit-table"]));
    assert!(t3.lines().any(|l| l == row.lines().nth(1).unwrap()), "{row}");
}

#[test]
fn tables_json_and_all() {
    let o = run(&["tables", "all"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for name in ["msV", "msc", "ms~V"] {
        assert!(text.contains(name));
    }
    let v: serde_json::Value = serde_json::from_str(&stdout(&run(&["tables", "5", "--json"]))).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 6);
}

#[test]
fn suites_and_witnesses() {
    let o = run(&["suite", "controls"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let o = run(&["suite", "witness", "--case", "prop3/vect/3/1"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(run(&["suite", "nonsense"]).status.code(), Some(2));
}
