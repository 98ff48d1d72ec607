use std::process::{Command, Output};

use serde_json::Value;

fn homvar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homvar")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = vec!["--json"];
    a.extend_from_slice(args);
    let o = homvar(&a);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    v
}

#[test]
fn info_first_line() {
    let o = homvar(&["info", "F4/P4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("dim 15; exposed short: yes; T: 8 ⊕ 7"));
}

#[test]
fn rep_dim() {
    assert_eq!(stdout(&homvar(&["rep", "dim", "E7", "w7"])), "56\n");
    assert_eq!(stdout(&homvar(&["rep", "dim", "E6", "w4"])), "2925\n");
    assert_eq!(json(&["rep", "dim", "E6", "w1"])["data"]["dim"], "27");
}

#[test]
fn exit_codes() {
    let bad = homvar(&["planes", "X9/P1"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("position 0"));
    assert_eq!(homvar(&["lines", "F4/P{4"]).status.code(), Some(2));
    assert_eq!(homvar(&["lines", "A3/P5"]).status.code(), Some(2));
    assert_eq!(homvar(&["rep", "normal", "E6/P1", "--j", "2"]).status.code(), Some(3));
    assert_eq!(homvar(&["--dim-guard", "1000", "rep", "weights", "E8", "w4"]).status.code(), Some(4));
}

#[test]
fn reconstruct_json_ends_in_e6() {
    let v = json(&["reconstruct", "E6/P1"]);
    let text = v.to_string();
    assert!(text.contains("S_5") && text.contains("G(2,5)"), "{text}");
    let o = stdout(&homvar(&["reconstruct", "E6/P1"]));
    assert!(o.contains("isomorphic to E6"), "{o}");
}

#[test]
fn planes_d7() {
    let o = stdout(&homvar(&["planes", "D7/P7", "--k", "3"]));
    assert!(o.contains("2 families of P^3"), "{o}");
    let v = json(&["planes", "D7/P7", "--k", "3"]);
    assert_eq!(v["input"]["k"], 3);
}

#[test]
fn marked_diagrams() {
    let o = stdout(&homvar(&["info", "F4/P4"]));
    assert!(o.contains("○—○⇒○—●"));
    let o = stdout(&homvar(&["classify", "A3/P{1,3}"]));
    assert!(o.contains("●—○—●"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["octonion-verify", "--samples", "30", "--points", "2"][..],
        &["--seed", "7", "octonion-verify", "--samples", "30", "--points", "2"][..],
        &["--json", "lines", "F4/P4"][..],
        &["--json", "prolong", "A4/P2"][..],
    ] {
        let a = homvar(args);
        let b = homvar(args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn text_numbers_appear_in_json() {
    for args in [
        &["info", "F4/P4"][..],
        &["lines", "G2/P1"][..],
        &["rep", "ambient", "E6", "--end", "2", "--k", "2"][..],
        &["prolong", "A5/P3"][..],
    ] {
        let text = stdout(&homvar(args));
        let j = json(args).to_string();
        for tok in text.split(|c: char| !c.is_ascii_digit()).filter(|t| t.len() >= 2) {
            assert!(j.contains(tok), "{args:?}: {tok} missing from {j}");
        }
    }
}
