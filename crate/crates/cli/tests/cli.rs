use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

const REFERENCE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/reference.lca");

fn lca(args: &[&str], env: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lca"));
    cmd.args(args).env_remove("LCA_DEG_DEFAULT");
    if let Some(v) = env {
        cmd.env("LCA_DEG_DEFAULT", v);
    }
    cmd.output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn source(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".lca").tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn path(f: &tempfile::NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

#[test]
fn check_axioms_passes_on_reference() {
    let o = lca(&["check-axioms", REFERENCE], None);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["ok"], true);
    assert_eq!(v["algebras"]["CC"]["rank"], 6);
}

#[test]
fn broken_table_exits_one() {
    let f = source("confalg B {\n    generators L;\n    bracket [L ~ L] = (D + 3*lam) L;\n}\n");
    let o = lca(&["check-axioms", path(&f), "--algebra", "B"], None);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["ok"], false);
}

#[test]
fn parse_error_exits_two_with_position() {
    let f = source("confalg V {\n    generators L;\n    bracket [L ~ L] = (D + 2*lam L;\n}\n");
    let o = lca(&["report", path(&f)], None);
    assert_eq!(o.status.code(), Some(2));
    let v = json(&o);
    assert_eq!(v["error"]["code"], "PARSE_ERROR");
    assert_eq!(v["error"]["diagnostics"][0]["line"], 3);
    assert!(!o.stderr.is_empty());
}

#[test]
fn flag_errors_exit_three() {
    assert_eq!(
        lca(&["solve", REFERENCE, "--algebra", "Vir"], None)
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        lca(
            &["solve", REFERENCE, "--algebra", "Nope", "--space", "cder"],
            None
        )
        .status
        .code(),
        Some(3)
    );
    assert_eq!(
        lca(&["report", "/nonexistent/file.lca"], None)
            .status
            .code(),
        Some(3)
    );
    assert_eq!(lca(&["frobnicate"], None).status.code(), Some(3));
    let bad_env = lca(
        &["solve", REFERENCE, "--algebra", "Vir", "--space", "cder"],
        Some("two"),
    );
    assert_eq!(bad_env.status.code(), Some(3));
    assert_eq!(lca(&["--help"], None).status.code(), Some(0));
}

#[test]
fn nonzero_center_exits_four() {
    let f = source("liealg a {\n    basis z;\n}\nconfalg A = cur(a);\nmodmap one : A -> A {\n    z |-> z;\n}\n");
    let o = lca(
        &["triple-hom", path(&f), "--map", "one", "--decompose"],
        None,
    );
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(json(&o)["error"]["code"], "CENTER_NONZERO");
}

#[test]
fn solve_uses_flags_then_env_then_default() {
    let v = json(&lca(
        &["solve", REFERENCE, "--algebra", "Vir", "--space", "tqc"],
        None,
    ));
    assert_eq!(
        (
            v["deg_d"].clone(),
            v["deg_x"].clone(),
            v["dimension"].clone()
        ),
        (3.into(), 3.into(), 0.into())
    );

    let v = json(&lca(
        &["solve", REFERENCE, "--algebra", "Vir", "--space", "ctder"],
        Some("2"),
    ));
    assert_eq!(
        (v["deg_d"].clone(), v["deg_x"].clone()),
        (2.into(), 2.into())
    );
    assert_eq!(v["dimension"], 2);
    assert_eq!(v["inner_quotient_dimension"], 0);

    let v = json(&lca(
        &[
            "solve",
            REFERENCE,
            "--algebra",
            "Vir",
            "--space",
            "cder",
            "--deg-x",
            "1",
        ],
        Some("2,3"),
    ));
    assert_eq!(
        (v["deg_d"].clone(), v["deg_x"].clone()),
        (2.into(), 1.into())
    );
}

#[test]
fn solve_gctder_reports_tau() {
    let o = lca(
        &[
            "solve",
            REFERENCE,
            "--algebra",
            "C",
            "--space",
            "gctder",
            "--deg-d",
            "1",
            "--deg-x",
            "2",
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["dimension"], 14);
    assert_eq!(v["tau"].as_array().unwrap().len(), 14);
}

#[test]
fn triple_hom_labels() {
    for (map, label) in [("id", "HOM"), ("neg", "ANTIHOM"), ("diag", "DIRECT_SUM")] {
        let o = lca(
            &["triple-hom", REFERENCE, "--map", map, "--decompose"],
            None,
        );
        assert_eq!(o.status.code(), Some(0), "{map}");
        let v = json(&o);
        assert_eq!(v["label"], label);
        assert_eq!(v["kinds"]["TRIPLEHOM"], true);
        assert!(v["decomposition"]["checks"]
            .as_array()
            .unwrap()
            .iter()
            .all(|c| c["ok"] == true));
    }
    let v = json(&lca(&["triple-hom", REFERENCE, "--map", "neg"], None));
    assert_eq!(v["kinds"]["HOM"], false);
    assert!(v.get("decomposition").is_none());
}

#[test]
fn report_on_reference() {
    let o = lca(&["report", REFERENCE], None);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["summary"]["fail"], 0);
    assert_eq!(v["results"]["algebras"]["Vir"]["class"], "virasoro");
    assert_eq!(v["input"]["sha256"].as_str().unwrap().len(), 64);
    for e in v["ledger"].as_array().unwrap() {
        assert!(["PASS", "FAIL", "SKIP"].contains(&e["status"].as_str().unwrap()));
        assert!(e["claim"].is_string() && e["anchor"].is_string());
    }
}

#[test]
fn empty_file_gives_empty_ledger() {
    let f = source("# nothing here\n");
    let o = lca(&["report", path(&f)], None);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["ledger"].as_array().unwrap().len(), 0);
    assert_eq!(v["summary"]["pass"], 0);
}

#[test]
fn text_format() {
    let o = lca(
        &[
            "--format",
            "text",
            "solve",
            REFERENCE,
            "--algebra",
            "Vir",
            "--space",
            "tc",
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(0));
    let s = String::from_utf8(o.stdout).unwrap();
    assert!(
        s.contains("dimension") && !s.trim_start().starts_with('{'),
        "{s}"
    );
}
