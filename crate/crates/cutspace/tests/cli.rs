use std::path::Path;
use std::process::{Command, Output};

fn cutspace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cutspace")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn example_json_is_deterministic() {
    for name in ["ex-omega", "ex-cofinite", "ex-topz"] {
        let a = cutspace(&["example", name, "--json", "--no-timings"]);
        let b = cutspace(&["example", name, "--json", "--no-timings"]);
        assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
        assert_eq!(a.stdout, b.stdout);
        let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
        assert_eq!(v["instance"], name);
        assert_eq!(v["summary"]["fail"], 0);
        assert!(v["checks"].as_array().unwrap().iter().all(|c| c["millis"] == 0));
    }
}

#[test]
fn unknown_example_is_a_usage_error() {
    assert_eq!(cutspace(&["example", "ex-nothing"]).status.code(), Some(2));
}

#[test]
fn parse_error_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.cut", "poset P {\n  elements a; }\n");
    let o = cutspace(&["check", &f]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains(":2:12:"), "{}", stderr(&o));
}

#[test]
fn missing_file_is_a_usage_error() {
    assert_eq!(cutspace(&["check", "/nonexistent/x.cut"]).status.code(), Some(2));
}

#[test]
fn failing_directive_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "f.cut",
        "poset P { elements: a, b; order: a < b; }\nspace S = alexandroff(P);\ncheck waybelow S {b} {a};\n",
    );
    let o = cutspace(&["check", &f, "--no-timings"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn passing_document_under_both_conventions() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "ok.cut",
        "poset P { elements: a, b; order: a < b; }\nspace S = alexandroff(P);\ncheck waybelow S {a} {b};\ncheck si2-continuous S;\n",
    );
    let o = cutspace(&["check", &f, "--convention", "both", "--json", "--no-timings"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["checks"].as_array().unwrap().len(), 4);
}

#[test]
fn suites_validate_arguments() {
    let o = cutspace(&["suite", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("finite-equivalences"));
    assert_eq!(cutspace(&["suite", "rudin", "--max-n", "9"]).status.code(), Some(2));
    let o = cutspace(&["suite", "convention-duality", "--max-n", "3", "--no-timings"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn enumerate_lists_posets() {
    let o = cutspace(&["enumerate", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 19);
    assert_eq!(cutspace(&["enumerate", "--n", "7"]).status.code(), Some(2));
    assert_eq!(cutspace(&["enumerate", "--n", "0"]).status.code(), Some(2));
}

#[test]
fn enumerate_stats() {
    let o = cutspace(&["enumerate", "--n", "4", "--stats"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    for line in ["count 219", "oracle 219", "reference 219"] {
        assert!(s.lines().any(|l| l == line), "{s}");
    }
    let total: usize = s
        .lines()
        .filter_map(|l| l.strip_prefix("comparabilities "))
        .map(|l| l.split(' ').nth(1).unwrap().parse::<usize>().unwrap())
        .sum();
    assert_eq!(total, 219);
}

#[test]
fn help_and_bad_flags() {
    assert_eq!(cutspace(&["--help"]).status.code(), Some(0));
    assert_eq!(cutspace(&["check"]).status.code(), Some(2));
    assert_eq!(cutspace(&["frobnicate"]).status.code(), Some(2));
}
