use std::process::{Command, Output};

use howe::cli::CliError;
use serde_json::Value;

fn howe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_howe")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = howe(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o).trim_end().to_string()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    serde_json::from_str(&ok(&full)).unwrap()
}

#[test]
fn theta_both_conventions() {
    assert_eq!(ok(&["theta", "--n", "1", "--m", "3", "--pi", "{[5]}"]), "{[0], [-1], [-4]}");
    assert_eq!(
        ok(&["theta", "--n", "1", "--m", "3", "--pi", "{[5]}", "--convention", "omega"]),
        "{[1/2], [-1/2], [-5]}"
    );
}

#[test]
fn recursion_agrees_and_traces() {
    let closed = ok(&["theta", "--n", "2", "--m", "3", "--pi", "{[0..1]}"]);
    let rec = ok(&["theta-recursive", "--n", "2", "--m", "3", "--pi", "{[0..1]}"]);
    assert_eq!(closed, rec);

    let traced = ok(&["theta-recursive", "--trace", "--n", "1", "--m", "2", "--pi", "{[2]}"]);
    let lines: Vec<&str> = traced.lines().collect();
    assert_eq!(lines.first(), Some(&"lower-point n=1 m=2 a=0"));
    assert_eq!(lines.last(), Some(&"{[-1/2], [-3/2]}"));

    let v = json(&["theta-recursive", "--trace", "--n", "1", "--m", "2", "--pi", "{[2]}"]);
    assert_eq!(v["meta"]["fallbacks"], 0);
    assert_eq!(v["meta"]["upper_only_steps"], 1);
    assert_eq!(v["meta"]["trace"].as_array().unwrap().len(), 3);
}

#[test]
fn dual_and_sort_with_labels() {
    assert_eq!(
        ok(&["dual", "--label", "rho:2:rhov", "--pi", "{[0..1], [1/2]@rho}"]),
        "{[-1/2]@rhov, [-1..0]}"
    );
    assert_eq!(ok(&["sort", "--pi", "{[0], [1..2]}"]), "[1..2], [0]");
    assert_eq!(ok(&["sort", "--pi", "{[0], [1..2]}", "--order", "alpha"]), "[0], [1..2]");
}

#[test]
fn table_verbs() {
    let k = ok(&["kudla", "--n", "2", "--m", "3", "--t", "1", "--side", "right"]);
    assert_eq!(k.lines().count(), 2);
    assert!(k.lines().nth(1).unwrap().ends_with("+regular"));
    assert_eq!(ok(&["rank", "--n", "2", "--m", "3"]).lines().count(), 3);
    assert_eq!(ok(&["lima", "--n", "2", "--m", "3", "--r", "1", "--a", "1", "--chi", "2", "--side", "left"]), "{1}");
    let v = json(&["lima", "--n", "2", "--m", "3", "--r", "1", "--a", "1", "--b", "1", "--chi", "0", "--side", "right"]);
    assert!(v["entries"].is_array());
}

#[test]
fn boundary_classify_check_h_reduce() {
    let b = ok(&["boundary", "--n", "1", "--m", "2", "--pi", "{[1]}"]);
    assert_eq!(b.lines().next(), Some("excluded"));
    assert_eq!(ok(&["classify", "--n", "1", "--m", "2", "--pi", "{[2]}"]), "H strippable={2}");
    assert!(ok(&["check-h", "--n", "1", "--m", "2", "--pi", "{[2]}"]).starts_with("impossible"));
    assert_eq!(
        ok(&["reduce", "--n", "1", "--m", "3", "--pi", "{[5]}", "--pip", "{[-1], [0], [-4]}", "--chi", "5"]),
        "n=0 m=2 a=1 rho={} rho'={[1/2], [-1/2]}"
    );
}

#[test]
fn json_envelope_shape() {
    let v = json(&["theta", "--n", "1", "--m", "3", "--pi", "{[5]}"]);
    let obj = v.as_object().unwrap();
    assert_eq!(obj.keys().collect::<Vec<_>>(), ["entries", "group_size", "meta"]);
    assert_eq!(v["group_size"], 3);
    let e = &v["entries"][2];
    assert_eq!((e["label"].as_str(), e["begin"].as_str(), e["end"].as_str()), (Some("1"), Some("-4"), Some("-4")));
    assert_eq!(v["meta"]["verb"], "theta");

    let k = json(&["kudla", "--n", "1", "--m", "1", "--t", "1", "--side", "left"]);
    assert!(k["group_size"].is_null());
}

#[test]
fn exit_codes() {
    // domain error: pi does not live on GL_2
    assert_eq!(howe(&["theta", "--n", "2", "--m", "3", "--pi", "{[5]}"]).status.code(), Some(1));
    assert_eq!(howe(&["theta", "--n", "3", "--m", "2", "--pi", "{[0..2]}"]).status.code(), Some(1));
    // parse and usage errors
    let o = howe(&["theta", "--n", "1", "--m", "3", "--pi", "{[5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("at 3"));
    assert_eq!(howe(&["dual", "--pi", "{[0]@nope}"]).status.code(), Some(2));
    assert_eq!(howe(&["bogus"]).status.code(), Some(2));
    assert_eq!(howe(&["--help"]).status.code(), Some(0));
    // self-test: a clean run exits 0; the failure path maps to 3
    let o = howe(&["selftest", "--max-n", "2", "--window", "1", "--max-gap", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().all(|l| l.contains(": PASS")));
    assert_eq!(CliError::SelftestFailed(String::new()).exit_code(), 3);
}

#[test]
fn output_is_deterministic() {
    let args = ["--json", "selftest", "--max-n", "2", "--window", "1", "--max-gap", "1", "--jobs", "3"];
    let a = stdout(&howe(&args));
    let b = stdout(&howe(&args));
    assert_eq!(a, b);
    let one = ["--json", "selftest", "--max-n", "2", "--window", "1", "--max-gap", "1", "--jobs", "1"];
    assert_eq!(a, stdout(&howe(&one)));
    let t = ["theta-recursive", "--trace", "--n", "3", "--m", "4", "--pi", "{[3..4], [0]@chi}", "--label", "chi:1:chi"];
    assert_eq!(ok(&t), ok(&t));
}
