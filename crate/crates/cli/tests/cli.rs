use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hahn_automata::algebra::fq::{Fq, FqField};
use hahn_automata::automata::text::{format_dfao, parse_dfao};
use hahn_automata::automata::{Dfao, OutputAlphabet};
use hahn_automata::series::arith::{equals, neg};
use hahn_automata::series::checks::{decreasing_loop, increasing_loop};
use hahn_automata::series::{AutomaticSeries, Exponent};
use serde_json::Value;

fn hahn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hahn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let o = hahn(&a);
    let v = serde_json::from_str(&stdout(&o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)));
    (o.status.code().unwrap(), v)
}

fn field_loop(m: Dfao) -> Dfao {
    let k = FqField::prime(m.p()).unwrap();
    m.map_outputs(|v| v, OutputAlphabet::Field(k))
}

fn write(dir: &Path, name: &str, m: &Dfao) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, format_dfao(m)).unwrap();
    path
}

fn monomial(p: u32, e: Exponent, c: u32) -> AutomaticSeries {
    AutomaticSeries::from_finite_series(&FqField::prime(p).unwrap(), &[(e, Fq(c))]).unwrap()
}

#[test]
fn decide_square_root_in_characteristic_two() {
    let (code, v) = json(&["decide", "--p", "2", "--field", "F2", "X^2 - t"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "YES");
    assert_eq!(v["witness"]["terms"][0]["exponent"], "1/2");
}

#[test]
fn decide_square_root_in_characteristic_three() {
    let o = hahn(&["decide", "--p", "3", "--field", "F3", "X^2 - t"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("verdict: NO\n"));
    assert!(stdout(&o).contains("oracle count: 0\n"));
}

#[test]
fn decide_over_a_ramified_group() {
    let (code, v) = json(&[
        "decide",
        "--p",
        "3",
        "--field",
        "F3",
        "--m",
        "2",
        "X^2 - t^3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["m"], 2);
    assert_eq!(v["bound_m"], 2);
    assert_eq!(v["witness"]["terms"][0]["exponent"], "3/2");
    assert_eq!(v["witness"]["exponent_scale"], 2);
    assert_eq!(v["witness"]["ramification"][0]["exponent"], "3/2");
    assert_eq!(v["witness"]["ramification"][0]["primes"][0], 2);
}

#[test]
fn decide_with_value_sets() {
    let (code, v) = json(&["decide", "--p", "3", "--V", "2", "X^2 - t^3"]);
    assert_eq!(code, 0);
    assert_eq!(v["m"], 2);
    assert_eq!(v["value_set"]["admitted"][0], 2);
    let (code, v) = json(&["decide", "--p", "3", "--V=", "X^2 - t^3"]);
    assert_eq!(code, 1);
    assert_eq!(v["m"], 1);
    let (code, v) = json(&["decide", "--p", "3", "--V", "4,5", "X^2 - t^3"]);
    assert_eq!(code, 1);
    assert_eq!(v["m"], 1);
}

#[test]
fn decide_respects_the_coefficient_field() {
    assert_eq!(
        hahn(&["decide", "--p", "3", "X^2 + 1"]).status.code(),
        Some(1)
    );
    assert_eq!(
        hahn(&["decide", "--p", "3", "--field", "F9", "X^2 + 1"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        hahn(&["decide", "--p", "3", "--field", "closure", "X^2 + 1"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        hahn(&["decide", "--p", "3", "--field", "degrees:3", "X^2 + 1"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn json_keys_are_in_a_stable_order() {
    let o = hahn(&["decide", "--p", "2", "X^2 - X - t", "--format", "json"]);
    let text = stdout(&o);
    let keys = [
        "\"verdict\"",
        "\"polynomial\"",
        "\"p\"",
        "\"field\"",
        "\"m\"",
        "\"value_set\"",
        "\"bound_m\"",
        "\"oracle_count\"",
        "\"roots_found\"",
        "\"witness\"",
        "\"caps_hit\"",
        "\"search\"",
    ];
    let pos: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "{text}");
}

#[test]
fn reports_are_deterministic() {
    let args = ["decide", "--p", "3", "X^3 - X - t", "--format", "json"];
    let a = hahn(&args);
    let b = hahn(&args);
    assert_eq!(a.stdout, b.stdout);
    let c = hahn(&[
        "decide",
        "--p",
        "3",
        "X^3 - X - t",
        "--format",
        "json",
        "--jobs",
        "1",
    ]);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn witness_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.dfao");
    let (code, v) = json(&[
        "decide",
        "--p",
        "3",
        "X^3 - X - t",
        "--witness-out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["witness"]["file"], path.to_str().unwrap());
    let text = std::fs::read_to_string(&path).unwrap();
    let m = parse_dfao(&text).unwrap();
    assert_eq!(format_dfao(&m), text);
    assert_eq!(v["witness"]["states"], m.num_states());
    let o = hahn(&["dfao", "support", "-k", "4", path.to_str().unwrap()]);
    let exps: Vec<String> = stdout(&o)
        .lines()
        .take(4)
        .map(|l| l.split(' ').next().unwrap().to_string())
        .collect();
    assert_eq!(exps, ["1", "3", "9", "27"]);
}

#[test]
fn usage_and_input_errors() {
    assert_eq!(hahn(&["decide"]).status.code(), Some(3));
    assert_eq!(hahn(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(hahn(&["--help"]).status.code(), Some(0));
    let o = hahn(&["decide", "--p", "3", "X^2 - t^"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("column"), "{}", stderr(&o));
    let o = hahn(&["decide", "--p", "3", "--m", "3", "X^2 - t"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("not coprime"));
    assert_eq!(hahn(&["decide", "--p", "4", "X"]).status.code(), Some(4));
    assert_eq!(
        hahn(&["decide", "--p", "3", "2*X - t"]).status.code(),
        Some(4)
    );
    assert_eq!(
        hahn(&["decide", "--p", "3", "--field", "F4", "X"])
            .status
            .code(),
        Some(4)
    );
    assert_eq!(
        hahn(&["dfao", "zero", "/nonexistent.dfao"]).status.code(),
        Some(4)
    );
}

#[test]
fn dfao_algebra() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let x = monomial(3, Exponent::new(4, 3).unwrap(), 2);
    let y = monomial(3, Exponent::integer(1), 1);
    let xp = write(d, "x.dfao", x.automaton());
    let mx = write(d, "minus-x.dfao", neg(&x).unwrap().automaton());
    let yp = write(d, "y.dfao", y.automaton());
    let s = |p: &PathBuf| p.to_str().unwrap().to_string();

    let sum = d.join("sum.dfao");
    let o = hahn(&["dfao", "add", &s(&xp), &s(&mx), "-o", &s(&sum)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&hahn(&["dfao", "zero", &s(&sum)])), "true\n");
    assert_eq!(stdout(&hahn(&["dfao", "zero", &s(&xp)])), "false\n");

    let o = hahn(&["dfao", "mul", &s(&xp), &s(&yp)]);
    let prod = AutomaticSeries::new(parse_dfao(&stdout(&o)).unwrap()).unwrap();
    assert!(equals(&prod, &monomial(3, Exponent::new(7, 3).unwrap(), 2)).unwrap());
    let pp = write(d, "prod.dfao", prod.automaton());
    assert_eq!(stdout(&hahn(&["dfao", "support", &s(&pp)])), "7/3 2\n");

    assert_eq!(stdout(&hahn(&["dfao", "eq", &s(&xp), &s(&xp)])), "true\n");
    assert_eq!(stdout(&hahn(&["dfao", "eq", &s(&xp), &s(&yp)])), "false\n");

    let two = write(d, "two.dfao", &field_loop(increasing_loop(2)));
    let o = hahn(&["dfao", "eq", &s(&xp), &s(&two)]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn dfao_support_validate_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let up = write(d, "up.dfao", &field_loop(increasing_loop(3)));
    let down = write(d, "down.dfao", &field_loop(decreasing_loop(3)));
    let up = up.to_str().unwrap();
    let down = down.to_str().unwrap();

    let o = hahn(&["dfao", "support", "-k", "3", up]);
    assert_eq!(stdout(&o), "2/3 1\n8/9 1\n26/27 1\n...\n");

    let o = hahn(&["dfao", "validate", up]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("well-ordered: yes"));
    let o = hahn(&["dfao", "validate", down]);
    assert_eq!(o.status.code(), Some(1));
    let report = stdout(&o);
    let defect = report.lines().find(|l| l.contains("cyclic edge")).unwrap();
    assert!(
        defect.contains(" -0-> ") && defect.contains("sibling edge"),
        "{report}"
    );
    assert_eq!(hahn(&["dfao", "support", down]).status.code(), Some(4));

    let o = hahn(&["dfao", "dot", up]);
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("label=\".\""), "{dot}");
}

#[test]
fn ore_envelope_and_bound() {
    let o = hahn(&["bound", "--p", "3", "X^2 - t^3"]);
    assert!(stdout(&o).starts_with("m = 2\n"), "{}", stdout(&o));
    assert_eq!(
        stdout(&hahn(&["bound", "--p", "2", "X - t"]))
            .lines()
            .next(),
        Some("m = 1")
    );
    let (_, v) = json(&["bound", "--p", "3", "X^2 - t^3"]);
    assert_eq!(v["m"], 2);
    assert_eq!(v["breakpoints"][0]["r"], "3/2");

    let o = hahn(&["envelope", "--p", "3", "X^3 - t^3*X"]);
    assert!(
        stdout(&o).contains("breakpoint 3/2 lines 0,1\n"),
        "{}",
        stdout(&o)
    );
    let (_, v) = json(&["envelope", "--p", "3", "X^3 - t^3*X"]);
    assert_eq!(v["breakpoints"].as_array().unwrap().len(), 1);
    assert!(v.get("m").is_none());

    let o = hahn(&["ore", "--p", "3", "X^2 - t^3"]);
    assert_eq!(stdout(&o), "X^3 + 2*t^3*X\n");
}
