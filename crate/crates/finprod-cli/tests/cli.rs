//! End-to-end fixtures for the `finprod` binary: every subcommand, the
//! documented byte-exact outputs, and the exit-code contract
//! (0 ok/equivalent, 1 not-equivalent, 2 input error, 3 empty domain,
//! 4 hypothesis failure, 5 internal identity violation).

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

fn finprod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finprod"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, contents).expect("fixture file is writable");
    path
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

const FOUR_RECORDS: &str = "time,event\n1,1\n2,1\n2,0\n3,1\n";

#[test]
fn km_writes_the_documented_curve() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "records.csv", FOUR_RECORDS);
    let output = dir.path().join("curve.csv");
    let run = finprod(&[
        "km",
        "--input",
        input.to_str().unwrap(),
        "--output",
        output.to_str().unwrap(),
    ]);
    assert_eq!(run.status.code(), Some(0), "stderr: {}", stderr(&run));
    assert_eq!(fs::read_to_string(&output).unwrap(), "t,s\n1,0.75\n2,0.5\n3,0\n");
}

#[test]
fn km_prints_to_stdout_without_an_output_path() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "records.csv", FOUR_RECORDS);
    let run = finprod(&["km", "--input", input.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(0));
    assert_eq!(stdout(&run), "t,s\n1,0.75\n2,0.5\n3,0\n");
}

#[test]
fn km_precision_controls_rounding() {
    let dir = TempDir::new().unwrap();
    // one event among three subjects: Ŝ = 2/3
    let input = write(&dir, "records.csv", "time,event\n1,1\n2,0\n3,0\n");
    let default_run = finprod(&["km", "--input", input.to_str().unwrap()]);
    assert_eq!(stdout(&default_run), "t,s\n1,0.666667\n");
    let tight_run = finprod(&["km", "--input", input.to_str().unwrap(), "--precision", "2"]);
    assert_eq!(stdout(&tight_run), "t,s\n1,0.67\n");
}

#[test]
fn km_with_no_events_is_an_empty_domain() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "records.csv", "time,event\n1,0\n2,0\n");
    let run = finprod(&["km", "--input", input.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(3));
    assert!(stderr(&run).contains("no events"), "stderr: {}", stderr(&run));
}

#[test]
fn km_input_errors_exit_2() {
    let missing = finprod(&["km", "--input", "/nonexistent/records.csv"]);
    assert_eq!(missing.status.code(), Some(2));

    let dir = TempDir::new().unwrap();
    let bad_header = write(&dir, "h.csv", "when,what\n1,1\n");
    let run = finprod(&["km", "--input", bad_header.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(2));
    assert!(stderr(&run).contains("line 1"));

    let bad_flag = write(&dir, "f.csv", "time,event\n1,2\n");
    let run = finprod(&["km", "--input", bad_flag.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(2));
    assert!(stderr(&run).contains("line 2"));
}

const AB_ALPHABET: &str = "a b c\na b\n";

#[test]
fn trace_eq_verdicts_use_exit_codes_0_and_1() {
    let dir = TempDir::new().unwrap();
    let alphabet = write(&dir, "alphabet.txt", AB_ALPHABET);

    let equivalent = finprod(&["trace-eq", "--alphabet", alphabet.to_str().unwrap(), "abc", "bac"]);
    assert_eq!(equivalent.status.code(), Some(0));
    assert_eq!(stdout(&equivalent), "equivalent\n");

    let different = finprod(&["trace-eq", "--alphabet", alphabet.to_str().unwrap(), "acb", "cab"]);
    assert_eq!(different.status.code(), Some(1));
    assert_eq!(stdout(&different), "not-equivalent\n");
}

#[test]
fn trace_eq_rejects_foreign_letters_and_bad_alphabets() {
    let dir = TempDir::new().unwrap();
    let alphabet = write(&dir, "alphabet.txt", AB_ALPHABET);
    let unknown = finprod(&["trace-eq", "--alphabet", alphabet.to_str().unwrap(), "abz", "abz"]);
    assert_eq!(unknown.status.code(), Some(2));

    let reflexive = write(&dir, "bad.txt", "a b\na a\n");
    let run = finprod(&["trace-eq", "--alphabet", reflexive.to_str().unwrap(), "a", "a"]);
    assert_eq!(run.status.code(), Some(2));
}

#[test]
fn heap_eval_handles_the_empty_poset_and_chains() {
    let dir = TempDir::new().unwrap();
    let empty = write(&dir, "empty.poset", "");
    let run = finprod(&["heap-eval", "--input", empty.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(0));
    assert_eq!(stdout(&run), "1\n");

    let chain = write(&dir, "chain.poset", "node a 2\nnode b 3\nlt a b\n");
    let run = finprod(&["heap-eval", "--input", chain.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(0));
    assert_eq!(stdout(&run), "6\n");
}

#[test]
fn heap_eval_rejects_cycles_and_syntax_errors() {
    let dir = TempDir::new().unwrap();
    let cyclic = write(&dir, "cycle.poset", "node a 2\nnode b 3\nlt a b\nlt b a\n");
    let run = finprod(&["heap-eval", "--input", cyclic.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(2));
    assert!(stderr(&run).contains("cycle"), "stderr: {}", stderr(&run));

    let malformed = write(&dir, "bad.poset", "node a\n");
    let run = finprod(&["heap-eval", "--input", malformed.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(2));
    assert!(stderr(&run).contains("line 1"));
}

#[test]
fn expand_prints_both_sides_and_agreement() {
    let run = finprod(&["expand", "2", "3"]);
    assert_eq!(run.status.code(), Some(0));
    assert_eq!(stdout(&run), "12 12 equal\n");

    let empty = finprod(&["expand"]);
    assert_eq!(empty.status.code(), Some(0));
    assert_eq!(stdout(&empty), "1 1 equal\n");

    let rational = finprod(&["expand", "1/2", "-3"]);
    assert_eq!(rational.status.code(), Some(0));
    assert_eq!(stdout(&rational), "-3 -3 equal\n");
}

#[test]
fn expand_enforces_the_size_bound() {
    let values: Vec<String> = (0..21).map(|i| i.to_string()).collect();
    let mut args = vec!["expand"];
    args.extend(values.iter().map(|s| s.as_str()));
    let run = finprod(&args);
    assert_eq!(run.status.code(), Some(2));

    let bad = finprod(&["expand", "two"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn det_diag_multiplies_the_diagonal() {
    let empty = finprod(&["det-diag"]);
    assert_eq!(empty.status.code(), Some(0));
    assert_eq!(stdout(&empty), "1\n");

    let ints = finprod(&["det-diag", "2", "3"]);
    assert_eq!(stdout(&ints), "6\n");

    let zero = finprod(&["det-diag", "4", "0", "7"]);
    assert_eq!(stdout(&zero), "0\n");

    let rationals = finprod(&["det-diag", "3/2", "4"]);
    assert_eq!(stdout(&rationals), "6\n");

    let bad = finprod(&["det-diag", "4", "x"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    let no_sub = finprod(&[]);
    assert_eq!(no_sub.status.code(), Some(2));
    let unknown_flag = finprod(&["km", "--nope"]);
    assert_eq!(unknown_flag.status.code(), Some(2));
}
