//! End-to-end runs of the binary against the theories in `theories/`.
//!
//! Text reports are compared with `tests/golden/<case>.txt`; set
//! `CATLOGIC_BLESS=1` to rewrite them.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use catlogic::coherent::{groupoid, validate_groupoid_json, validate_structures_json, SizeBounds};
use catlogic::equational::{validate_models_json, validate_syn_json, AlgebraicTheory};
use catlogic::propositional::validate_lt_json;
use catlogic::stone::validate_stone_json;
use catlogic::syntax::{parse_theory, Theory};
use catlogic::Limits;
use serde_json::Value;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn thy(name: &str) -> String {
    root().join("theories").join(name).to_str().unwrap().to_string()
}

fn load(name: &str) -> Theory {
    parse_theory(&fs::read_to_string(thy(name)).unwrap()).unwrap()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catlogic"))
        .current_dir(root())
        .args(args)
        .output()
        .unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stderr.is_empty());
    String::from_utf8(out.stdout).unwrap()
}

fn fails(args: &[&str], code: i32) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(code), "{args:?}");
    assert!(out.stdout.is_empty(), "reports go to stdout only on success");
    String::from_utf8(out.stderr).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    serde_json::from_str(&ok(&all)).unwrap()
}

fn golden(case: &str, actual: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{case}.txt"));
    if std::env::var_os("CATLOGIC_BLESS").is_some() {
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(&path, actual).unwrap();
        return;
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {case}"));
    assert_eq!(actual, expected, "golden {case}");
}

/// Minimal well-formedness for our DOT: one `digraph` block, every
/// statement line terminated, every edge between declared nodes.
fn assert_dot(text: &str) {
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("digraph ") && lines[0].ends_with('{'), "{}", lines[0]);
    assert_eq!(*lines.last().unwrap(), "}");
    let mut nodes = std::collections::BTreeSet::new();
    for line in &lines[1..lines.len() - 1] {
        let line = line.trim();
        assert!(line.ends_with(';'), "{line}");
        assert_eq!(line.matches('"').count() % 2, 0, "{line}");
        let head = line.split([' ', ';']).next().unwrap();
        if let Some((a, rest)) = line.split_once(" -> ") {
            let b = rest.split([' ', ';']).next().unwrap();
            assert!(nodes.contains(a.trim()) && nodes.contains(b), "{line}");
        } else if !matches!(head, "node" | "edge" | "graph" | "rankdir=BT") {
            nodes.insert(head.to_string());
        }
    }
}

#[test]
fn check_reports() {
    golden("check-semigroup", &ok(&["check", &thy("semigroup.thy")]));
    golden("check-unary", &ok(&["check", &thy("unary-predicate.thy")]));
    assert!(ok(&["check", &thy("semigroup.thy")]).ends_with("1 sort, 1 op, 1 axiom, fragment EQUATIONAL\n"));
    let err = fails(&["check", "theories/arity-error.thy"], 1);
    assert!(err.starts_with("error: theories/arity-error.thy:4:7: arity mismatch"), "{err}");
    let err = fails(&["check", "theories/empty.thy"], 1);
    assert!(err.contains("1:1: syntax error"), "{err}");
    assert!(fails(&["check", "theories/missing.thy"], 1).contains("missing.thy"));
    let v = json(&["check", &thy("group.thy")]);
    assert_eq!(v["fragment"], "EQUATIONAL");
    assert_eq!(v["axioms"], 3);
}

#[test]
fn lt_reports() {
    let imp = ok(&["lt", &thy("implication.thy")]);
    assert!(imp.starts_with("8 elements, 3 atoms\n"));
    golden("lt-implication", &imp);
    assert!(ok(&["lt", &thy("inconsistent.thy")]).starts_with("degenerate (1 element)\n"));
    assert!(ok(&["lt", &thy("free3.thy")]).starts_with("256 elements, 8 atoms\n"));
    assert!(fails(&["lt", &thy("group.thy")], 1).contains("fragment violation"));
    for name in ["implication.thy", "free3.thy", "inconsistent.thy"] {
        validate_lt_json(&load(name), &json(&["lt", &thy(name)]), &Limits::default()).unwrap();
        assert_dot(&ok(&["--format", "dot", "lt", &thy(name)]));
    }
}

#[test]
fn stone_reports() {
    let one = ok(&["stone", &thy("one-prop.thy"), "--roundtrip"]);
    assert!(one.starts_with("2 points"));
    golden("stone-one-prop", &one);
    let imp = ok(&["stone", &thy("implication.thy"), "--roundtrip"]);
    assert!(imp.starts_with("3 points"));
    assert!(imp.ends_with("roundtrip: OK, isomorphism on 8 elements\n"));
    golden("stone-implication", &imp);
    assert!(fails(&["stone", &thy("inconsistent.thy")], 1).contains("degenerate"));
    for name in ["one-prop.thy", "implication.thy", "free3.thy"] {
        let v = json(&["stone", &thy(name), "--roundtrip"]);
        validate_stone_json(&v).unwrap();
        assert_eq!(v["roundtrip"]["isomorphism"], true);
        assert_dot(&ok(&["--format", "dot", "stone", &thy(name)]));
    }
}

#[test]
fn models_reports() {
    assert_eq!(ok(&["models", &thy("semigroup.thy"), "--size", "2"]), "8 labeled\n");
    assert_eq!(ok(&["models", &thy("group.thy"), "--size", "1"]), "1 labeled\n");
    let g4 = ok(&["models", &thy("group.thy"), "--size", "4", "--upto-iso"]);
    assert!(g4.starts_with("16 labeled\n2 classes\n"));
    golden("models-group-4", &g4);
    golden("models-unary-2", &ok(&["models", &thy("unary-predicate.thy"), "--size", "2", "--upto-iso"]));
    golden("models-involution-3", &ok(&["models", &thy("involution.thy"), "--size", "3", "--upto-iso"]));
    assert!(fails(&["models", &thy("semigroup.thy"), "--size", "0"], 1).contains("size"));

    let lim = Limits::default();
    for (name, size) in [("semigroup.thy", 3), ("group.thy", 4), ("involution.thy", 3)] {
        let alg = AlgebraicTheory::new(load(name)).unwrap();
        let s = size.to_string();
        let all = json(&["models", &thy(name), "--size", &s]);
        let back = validate_models_json(&alg, &all, &lim).unwrap();
        assert_eq!(back.len() as u64, all["labeled"].as_u64().unwrap());
        validate_models_json(&alg, &json(&["models", &thy(name), "--size", &s, "--upto-iso"]), &lim).unwrap();
        assert_dot(&ok(&["--format", "dot", "models", &thy(name), "--size", &s]));
    }
    for name in ["unary-predicate.thy", "at-least-two.thy", "implication.thy"] {
        let t = load(name);
        let f = thy(name);
        validate_structures_json(&t, &json(&["models", &f, "--size", "3"]), &lim).unwrap();
        validate_structures_json(&t, &json(&["models", &f, "--size", "3", "--upto-iso"]), &lim).unwrap();
        assert_dot(&ok(&["--format", "dot", "models", &thy(name), "--size", "2"]));
    }
}

#[test]
fn groupoid_reports() {
    let pure = ok(&["groupoid", &thy("pure-equality.thy"), "--max", "3"]);
    assert!(pure.starts_with("3 objects; |Aut| = 1,2,6\n"));
    golden("groupoid-pure-3", &pure);
    let unary = ok(&["groupoid", &thy("unary-predicate.thy"), "--max", "2"]);
    assert!(unary.starts_with("6 objects; |Aut| = 1,1,2,1,1,2\n5 iso classes\n"));
    golden("groupoid-unary-2", &unary);
    let exact = ok(&["groupoid", &thy("unary-predicate.thy"), "--min", "2", "--max", "2"]);
    assert!(exact.starts_with("4 objects; |Aut| = 2,1,1,2\n3 iso classes\n"));
    assert_eq!(ok(&["groupoid", &thy("pure-equality.thy"), "--max", "0"]), "empty groupoid\n");

    let dir = std::env::temp_dir().join(format!("catlogic-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let dot = dir.join("g.dot");
    let text = ok(&["groupoid", &thy("at-least-two.thy"), "--max", "3", "--dot", dot.to_str().unwrap()]);
    assert!(text.starts_with("2 objects; |Aut| = 2,6\n"));
    let written = fs::read_to_string(&dot).unwrap();
    assert_dot(&written);
    assert_eq!(written, ok(&["--format", "dot", "groupoid", &thy("at-least-two.thy"), "--max", "3"]));

    let lim = Limits::default();
    for name in ["pure-equality.thy", "unary-predicate.thy", "involution.thy", "free3.thy"] {
        let t = load(name);
        let v = json(&["groupoid", &thy(name), "--max", "3"]);
        validate_groupoid_json(&t, &v, &lim).unwrap();
        let g = groupoid(&t, SizeBounds::up_to(3), &lim).unwrap();
        assert_eq!(v["objects"].as_array().unwrap().len(), g.len());
    }
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn syn_reports() {
    let inv = thy("involution.thy");
    assert_eq!(ok(&["syn", &inv, "--arity", "1", "1", "--depth", "3"]), "2 classes: x1, f(x1)\n");
    assert_eq!(ok(&["syn", &thy("semigroup.thy"), "--arity", "1", "1", "--depth", "0"]), "1 class: x1\n");
    assert_eq!(ok(&["syn", &thy("semigroup.thy"), "--arity", "2", "1", "--depth", "0"]), "2 classes: x1, x2\n");
    golden("syn-involution-2-2", &ok(&["syn", &inv, "--arity", "2", "2", "--depth", "1"]));
    golden(
        "syn-group-1-1",
        &ok(&["syn", &thy("group-complete.thy"), "--arity", "1", "1", "--depth", "2"]),
    );
    assert!(fails(&["syn", &thy("group.thy"), "--arity", "1", "1"], 1).contains("backend unavailable"));
    let eval = ok(&["syn", &thy("group.thy"), "--arity", "1", "1", "--depth", "1", "--backend", "modeleval"]);
    assert!(eval.starts_with("4 classes: x1, e, inv(x1)"), "{eval}");
    assert!(fails(&["syn", &thy("unary-predicate.thy"), "--arity", "1", "1"], 1).starts_with("error: "));

    for (name, backend) in [("involution.thy", "rewrite"), ("group.thy", "modeleval"), ("group-complete.thy", "rewrite")] {
        let alg = AlgebraicTheory::new(load(name)).unwrap();
        for (n, m) in [("0", "1"), ("1", "1"), ("2", "1"), ("1", "2")] {
            let v = json(&["syn", &thy(name), "--arity", n, m, "--depth", "2", "--backend", backend]);
            validate_syn_json(&alg, &v).unwrap();
        }
    }
}

#[test]
fn global_flags() {
    let dir = std::env::temp_dir().join(format!("catlogic-out-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let out = dir.join("report.txt");
    let stdout = ok(&["--output", out.to_str().unwrap(), "lt", &thy("implication.thy")]);
    assert!(stdout.is_empty());
    assert_eq!(fs::read_to_string(&out).unwrap(), ok(&["lt", &thy("implication.thy")]));
    fs::remove_dir_all(&dir).unwrap();

    let err = fails(&["--budget", "10", "groupoid", &thy("unary-predicate.thy"), "--max", "3"], 1);
    assert!(err.contains("bound exceeded"), "{err}");
    assert!(fails(&["--format", "dot", "check", &thy("group.thy")], 1).contains("DOT"));
    fails(&["--format", "yaml", "check", &thy("group.thy")], 1);
    fails(&["frobnicate"], 1);
    assert!(ok(&["--help"]).contains("groupoid"));
    for w in ["1", "3"] {
        assert_eq!(
            ok(&["--workers", w, "models", &thy("semigroup.thy"), "--size", "3", "--upto-iso"]),
            ok(&["models", &thy("semigroup.thy"), "--size", "3", "--upto-iso"])
        );
    }
}
