use std::process::Command;

use lalogic::cli::{EXIT_BUDGET, EXIT_ERROR, EXIT_FAILS, EXIT_HOLDS};
use lalogic::run;
use serde_json::Value;

const LINE3: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/line3.st");
const EXAMPLE1: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/example1.drv");

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("lalogic").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut v = vec!["--format", "json"];
    v.extend_from_slice(args);
    let (code, out, _) = call(&v);
    (code, serde_json::from_str(&out).unwrap())
}

#[test]
fn verdicts_set_the_exit_code() {
    assert_eq!(call(&["--regex", "equiv", "--mode", "lang", "(?=a)b", "0"]).0, EXIT_HOLDS);
    assert_eq!(call(&["--regex", "equiv", "--mode", "lang", "(?=a)a", "0"]).0, EXIT_FAILS);
    assert_eq!(call(&["valid", "--class", "stfinlin", "<a>P -> [a]P"]).0, EXIT_HOLDS);
    assert_eq!(call(&["valid", "<a>P -> [a]P"]).0, EXIT_FAILS);
    assert_eq!(call(&["valid", "--class", "rel-pdl", "[a^+]P -> [a]P"]).0, EXIT_HOLDS);
    assert_eq!(call(&["prove-check", EXAMPLE1]).0, EXIT_HOLDS);
    assert_eq!(call(&["prove-check", "--system", "pdl", EXAMPLE1]).0, EXIT_FAILS);
}

#[test]
fn errors_and_budgets() {
    assert_eq!(call(&["valid", "[a]"]).0, EXIT_ERROR);
    assert_eq!(call(&["frobnicate"]).0, EXIT_ERROR);
    assert_eq!(call(&["valid", "--class", "rel-pdl", "[a^a]P"]).0, EXIT_ERROR);
    assert_eq!(call(&["eval", "/nonexistent", "a"]).0, EXIT_ERROR);
    assert_eq!(call(&["--budget", "3", "valid", "[a*]P -> [a;a]P"]).0, EXIT_BUDGET);
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, EXIT_HOLDS);
    assert!(out.contains("prove-check"));
}

#[test]
fn witnesses_are_printed_on_request() {
    let (_, plain, _) = call(&["--regex", "equiv", "(a;a^a)^d", "0"]);
    assert_eq!(plain, "not equivalent\n");
    let (code, v) = json(&["--regex", "--witness", "equiv", "(a;a^a)^d", "0"]);
    assert_eq!(code, EXIT_FAILS);
    assert_eq!(v["witness"]["word"], "a");
    assert_eq!((v["witness"]["from"].as_u64(), v["witness"]["to"].as_u64()), (Some(0), Some(0)));
    let (_, v) = json(&["--witness", "valid", "[a]P -> P"]);
    let s = v["witness"]["structure"].as_str().unwrap();
    assert!(s.starts_with("size "));
}

#[test]
fn json_is_stable() {
    let args = ["--format", "json", "valid", "--witness", "[a^+]P -> [a;a]P"];
    let (_, a, _) = call(&args);
    let (_, b, _) = call(&args);
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn eval_on_a_structure_file() {
    let (code, out, _) = call(&["eval", LINE3, "a;a"]);
    assert_eq!((code, out.as_str()), (EXIT_HOLDS, "{(0,2)}\n"));
    let (code, out, _) = call(&["eval", LINE3, "<a>P"]);
    assert_eq!((code, out.as_str()), (EXIT_FAILS, "{1}\n"));
    assert_eq!(call(&["eval", LINE3, "[a^+]F -> P"]).0, EXIT_HOLDS);
}

#[test]
fn oracle_and_automaton() {
    let (code, out, _) = call(&["oracle", "a;b", "b;a"]);
    assert_eq!(code, EXIT_FAILS);
    assert!(out.contains("\"ab\""));
    assert_eq!(call(&["oracle", "--max-size", "3", "[a;a]P -> [a^+]P"]).0, EXIT_FAILS);
    assert_eq!(call(&["oracle", "--class", "stfinlin", "--max-size", "4", "<a>P -> [a]P"]).0, EXIT_HOLDS);
    let (code, v) = json(&["automaton", "--class", "stfinlin", "[a]P"]);
    assert_eq!(code, EXIT_HOLDS);
    assert_eq!(v["dirs"], 1);
    assert!(v["dump"].as_str().unwrap().starts_with("props "));
    let (code, out, _) = call(&["automaton", "--raw", "[S$]P"]);
    assert_eq!(code, EXIT_HOLDS);
    assert!(out.contains("dirs 2"));
}

#[test]
fn parse_reports_size_and_fragment() {
    let (_, v) = json(&["parse", "[a;b]P"]);
    assert_eq!(v["kind"], "formula");
    assert_eq!(v["size"], 5);
    let (_, v) = json(&["--regex", "parse", "(?=a)b"]);
    assert_eq!(v["kind"], "term");
}

#[test]
fn the_binary_runs() {
    let out = Command::new(env!("CARGO_BIN_EXE_lalogic")).args(["valid", "<a>P -> [a]P"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_FAILS));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "not valid\n");
}
