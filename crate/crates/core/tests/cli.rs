use std::io::Write;
use std::process::{Command, Output};

fn sexakit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sexakit"))
        .args(args)
        .env_remove("SEXAKIT_CORPUS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn eval_prints_canonical_literals() {
    let o = sexakit(&["eval", "1,9;22,30 / 2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "34;41,15\n");
    assert_eq!(stdout(&sexakit(&["eval", "0"])), "0\n");
    assert_eq!(stdout(&sexakit(&["eval", "--recognize", "7;45 / 46;30"])), "0;10\n");
    assert_eq!(stdout(&sexakit(&["eval", "0,0;30,0 + 0;30"])), "1\n");
}

#[test]
fn eval_failures() {
    let o = sexakit(&["eval", "7;45 / 46;30"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("46;30"));
    assert_eq!(sexakit(&["eval", "(1"]).status.code(), Some(2));
    assert_eq!(sexakit(&["eval", "--recognize", "1 / 7"]).status.code(), Some(3));
}

#[test]
fn wrappers() {
    assert_eq!(stdout(&sexakit(&["recip", "40,0"])), "0;0,1,30\n");
    assert_eq!(stdout(&sexakit(&["solve-quadratic", "14;3,45", "1,9;22,30", "4;41,15"])), "u = 5\n");
    let o = sexakit(&["sqrt", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("not a perfect square"));
    let o = sexakit(&["geom", "labor-depth", "6 sar60", "5", "40,0", "0;30", "--trace"]);
    assert!(stdout(&o).contains("water_per_nindan = 1,12,0 volume-sar @ rev.28\n"));
}

#[test]
fn json_output_parses() {
    let o = sexakit(&["--json", "solve-quadratic", "14;3,45", "1,9;22,30", "4;41,15"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["u"], "5");
    assert_eq!(v["trace"][4]["label"], "root");
    assert_eq!(v["trace"][4]["value"], "35;37,30");
    let o = sexakit(&["--json", "replay", "--all"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["reports"].as_array().unwrap().len(), 3);
    assert_eq!(o, sexakit(&["--json", "replay", "--all"]));
}

#[test]
fn replay_statuses() {
    let o = sexakit(&["replay", "--all"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let headers: Vec<_> = out.lines().filter(|l| l.starts_with("== ")).collect();
    assert_eq!(headers.len(), 3);
    assert!(headers[0].starts_with("== smt24.p1 PASS"));
    assert!(headers[2].starts_with("== smt25.p1 PASS"));

    let o = sexakit(&["replay", "smt25.p1"]);
    assert!(stdout(&o).trim_end().ends_with("z = 4;30 kus MATCH"));

    let o = sexakit(&["replay", "nosuch"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("nosuch"));
}

#[test]
fn corpus_selection() {
    let bundled = sexakit::corpus::BUNDLED_CORPUS;
    let mut wrong = tempfile::NamedTempFile::new().unwrap();
    wrong.write_all(bundled.replace("= 0;12 @", "= 0;13 @").as_bytes()).unwrap();
    let path = wrong.path().to_str().unwrap();

    let o = sexakit(&["replay", "smt25.p1", "--corpus", path]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("smt25.p1 recip_reach MISMATCH 0;13 0;12"));

    let o = Command::new(env!("CARGO_BIN_EXE_sexakit"))
        .args(["replay", "--all"])
        .env("SEXAKIT_CORPUS", path)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    bad.write_all(bundled.replace("reach = 5", "reach = 61").as_bytes()).unwrap();
    let o = sexakit(&["replay", "--all", "--corpus", bad.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("exceeds 59"));

    let o = sexakit(&["replay", "--all", "--corpus", "/nonexistent/smt.corpus"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn procedure_failure_during_replay_is_a_math_error() {
    let text = sexakit::corpus::BUNDLED_CORPUS.replace("given workers = 40,0 workers", "given workers = 7 workers");
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    let o = sexakit(&["replay", "--all", "--corpus", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("== smt25.p1 ERROR at step `recip_workers`"));
}
