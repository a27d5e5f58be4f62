use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn infsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_infsum")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

fn eval(src: &str, bits: u32) -> Output {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(src.as_bytes()).unwrap();
    infsum(&["eval", file.path().to_str().unwrap(), "--bits", &bits.to_string()])
}

#[test]
fn eval_examples() {
    let out = eval("mul(1/2, 3/4)\nsum(geometric(1/2))\nP@nat(1, 2, 3)\n", 40);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "3/8\n≥ 1 - 2^-41 (40 bits)\n23\n");
}

#[test]
fn eval_reports_positions() {
    let out = eval("add(1, 2)\nmul(1,\n    halve(1, 2))\n", 8);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains(":3:5: halve takes 1 argument(s), got 2"), "{err}");
}

#[test]
fn eval_keeps_coercions_explicit() {
    let out = eval("add(sum@nat(1, 2), 1/2)", 8);
    assert_eq!(out.status.code(), Some(1));
    let out = eval("add(real(sum@nat(1, 2)), 1/2)", 8);
    assert_eq!(stdout(&out), "7/2\n");
}

#[test]
fn check_is_deterministic() {
    let args = ["check", "--instance", "extreal", "--suite", "laws", "--seed", "11", "--cases", "200"];
    let (a, b) = (infsum(&args), infsum(&args));
    assert_eq!(a.stdout, b.stdout);
    assert!(a.status.success());
}

#[test]
fn check_examples() {
    let out = infsum(&["check", "--instance", "extnat", "--suite", "sumswap", "--seed", "42", "--cases", "1000"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("pass=1000 fail=0"));

    let out = infsum(&["check", "--instance", "extreal", "--suite", "zeno", "--seed", "7", "--cases", "100", "--bits", "40"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("pass=100 fail=0"));

    let out = infsum(&["check", "--instance", "extnat", "--suite", "zeno"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("fail=100") && text.contains("expected negative"), "{text}");
}

#[test]
fn check_exit_codes() {
    let out = infsum(&["check", "--instance", "extnat", "--suite", "idempotent", "--cases", "5"]);
    assert_eq!(out.status.code(), Some(1));
    let out = infsum(&["check", "--instance", "bool", "--suite", "idempotent", "--cases", "50"]);
    assert_eq!(out.status.code(), Some(0));
    let out = infsum(&["check", "--instance", "nope", "--suite", "laws"]);
    assert_eq!(out.status.code(), Some(2));
    let out = infsum(&["check", "--instance", "extnat"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn intset_compose_feedback() {
    let (f, g) = (data("feedback_first.txt"), data("feedback_second.txt"));
    let out = infsum(&["intset", "compose", f.to_str().unwrap(), g.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout(&out), "dom:{x:1,u:0}\ncod:{y:1,v:0}\nmap:[0]\nmode:\"FB\"\n");
}

#[test]
fn intset_compose_identities() {
    let id = data("identity_3_5.txt");
    let out = infsum(&["intset", "compose", id.to_str().unwrap(), id.to_str().unwrap()]);
    assert_eq!(stdout(&out), std::fs::read_to_string(&id).unwrap());
}

#[test]
fn intset_mismatch_and_bad_table() {
    let (id, f) = (data("identity_3_5.txt"), data("feedback_first.txt"));
    let out = infsum(&["intset", "compose", id.to_str().unwrap(), f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot compose"));
    let out = infsum(&["intset", "card", data("not_injective.txt").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn intset_card_and_trace() {
    let id = data("identity_3_5.txt");
    assert_eq!(stdout(&infsum(&["intset", "card", id.to_str().unwrap()])), "-2\n");
    let f = data("feedback_first.txt");
    assert_eq!(stdout(&infsum(&["intset", "card", f.to_str().unwrap(), "--cod"])), "1\n");
    let out = infsum(&["intset", "trace", data("trace_orbit.txt").to_str().unwrap()]);
    assert_eq!(stdout(&out), "dom:{x:1,u:0}\ncod:{y:1,v:0}\nmap:[0]\nmode:\"FB\"\n");
}

#[test]
fn intset_mode_flag() {
    let f = data("feedback_first.txt");
    let out = infsum(&["intset", "card", f.to_str().unwrap(), "--mode", "FI"]);
    assert!(out.status.success());
    let out = infsum(&["intset", "card", f.to_str().unwrap(), "--mode", "XX"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn paradox_commands() {
    assert_eq!(stdout(&infsum(&["paradox", "add", "r:0.(1)", "r:0.(1)"])), "r:1.(1)\n");
    assert_eq!(stdout(&infsum(&["paradox", "add", "t:1", "t:1"])), "t:10\n");
    assert_eq!(stdout(&infsum(&["paradox", "leq", "t:10", "r:1.(1)"])), "false\n");
    assert_eq!(stdout(&infsum(&["paradox", "leq", "t:1", "t:10"])), "true (u = t:1)\n");
    assert_eq!(stdout(&infsum(&["paradox", "k", "t:10"])), "r:1.(1)\n");
    assert_eq!(stdout(&infsum(&["paradox", "value", "r:0.1(01)"])), "2/3\n");
    assert_eq!(infsum(&["paradox", "k", "r:0.(1)"]).status.code(), Some(1));
    assert_eq!(infsum(&["paradox", "value", "r:1.(0)"]).status.code(), Some(2));
}
