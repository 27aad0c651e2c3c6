//! End-to-end tests for the `mg` binary: exit codes, output files
//! that re-validate, and re-checking the constructions on reload.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use monogr::doc::Document;
use monogr::Morphism;

fn mg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mg"))
        .args(args)
        .output()
        .expect("failed to run mg")
}

fn tmp(name: &str, content: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    fs::write(&path, content).unwrap();
    path
}

fn out_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("process was killed")
}

const GROW: &str = "\
monograph K { a: ; }
monograph L { a: ; }
monograph R { a: ; b: ; }
monograph G { n: ; }
morphism l : K -> L { a -> a; }
morphism r : K -> R { a -> a; }
morphism m : L -> G { a -> n; }
rule grow { left: l; right: r; }
";

#[test]
fn validate_accepts_a_good_document() {
    let f = tmp("good.mg", "monograph A { x: ; y: x; }\n");
    let o = mg(&["validate", f.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("1 monographs"));
}

#[test]
fn syntax_errors_exit_2() {
    let f = tmp("broken.mg", "monograph A {\n");
    let o = mg(&["validate", f.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("error:"));
}

#[test]
fn missing_files_exit_2() {
    let o = mg(&["validate", "/nonexistent/nowhere.mg"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn unknown_subcommands_exit_2() {
    let o = mg(&["frobnicate"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn color_is_opt_in() {
    let f = tmp("broken_color.mg", "monograph A {\n");
    let plain = mg(&["validate", f.to_str().unwrap()]);
    assert!(!String::from_utf8_lossy(&plain.stderr).contains("\x1b[31m"));
    let colored = Command::new(env!("CARGO_BIN_EXE_mg"))
        .args(["validate", f.to_str().unwrap()])
        .env("MG_COLOR", "1")
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&colored.stderr).contains("\x1b[31merror:"));
}

#[test]
fn check_morphism_reports_classification() {
    let f = tmp("check.mg", GROW);
    let o = mg(&["check-morphism", f.to_str().unwrap(), "m"]);
    assert_eq!(code(&o), 0);
    let s = String::from_utf8_lossy(&o.stdout).to_string();
    assert!(s.contains("injective=true"));
    assert!(s.contains("surjective=true"));
}

#[test]
fn failed_iso_search_exits_1() {
    let f = tmp(
        "noiso.mg",
        "monograph A { x: ; }\nmonograph B { x: ; y: ; }\n",
    );
    let o = mg(&["iso", f.to_str().unwrap(), "A", "B"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn pushout_output_revalidates_and_commutes() {
    let f = tmp(
        "span.mg",
        "\
monograph K { k: ; }
monograph L { k: ; x: k; }
monograph R { k: ; y: k; }
morphism f : K -> L { k -> k; }
morphism g : K -> R { k -> k; }
",
    );
    let out = out_path("po.mg");
    let o = mg(&[
        "pushout",
        f.to_str().unwrap(),
        "f",
        "g",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));

    let check = mg(&["validate", out.to_str().unwrap()]);
    assert_eq!(code(&check), 0);

    let doc = Document::parse(&fs::read_to_string(&out).unwrap()).unwrap();
    let pf = doc.morphism("f").unwrap();
    let pg = doc.morphism("g").unwrap();
    let pleft = doc.morphism("pleft").unwrap();
    let pright = doc.morphism("pright").unwrap();
    assert_eq!(
        Morphism::compose(&pleft, &pf).unwrap(),
        Morphism::compose(&pright, &pg).unwrap()
    );
}

#[test]
fn gluing_violation_exits_1() {
    let f = tmp(
        "dangling.mg",
        "\
monograph K { }
monograph L { a: ; }
monograph G { a: ; x: a; }
morphism l : K -> L { }
morphism m : L -> G { a -> a; }
",
    );
    let o = mg(&["gluing", f.to_str().unwrap(), "l", "m"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("violation"));
}

#[test]
fn gluing_success_exits_0() {
    let f = tmp("glue_ok.mg", GROW);
    let o = mg(&["gluing", f.to_str().unwrap(), "l", "m"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn dpo_with_named_match_produces_the_result() {
    let f = tmp("grow.mg", GROW);
    let out = out_path("grown.mg");
    let o = mg(&[
        "dpo",
        f.to_str().unwrap(),
        "grow",
        "--match",
        "m",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let doc = Document::parse(&fs::read_to_string(&out).unwrap()).unwrap();
    let result = doc.monographs.get("result").expect("result monograph");
    assert_eq!(result.edge_count(), 2);
    assert_eq!(result.trace(), [0].into_iter().collect());
}

#[test]
fn dpo_applies_at_every_enumerated_match() {
    let f = tmp("grow_all.mg", GROW);
    let out = out_path("grown_all.mg");
    let o = mg(&[
        "dpo",
        f.to_str().unwrap(),
        "grow",
        "--all",
        "--host",
        "G",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let doc = Document::parse(&fs::read_to_string(&out).unwrap()).unwrap();
    assert!(doc.monographs.keys().any(|k| k.starts_with("result")));
}

#[test]
fn terminal_output_revalidates() {
    let out = out_path("terminal.mg");
    let o = mg(&["terminal", "--trace", "0,1", "-o", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let check = mg(&["validate", out.to_str().unwrap()]);
    assert_eq!(code(&check), 0);
    let doc = Document::parse(&fs::read_to_string(&out).unwrap()).unwrap();
    assert!(doc.monographs.contains_key("terminal"));
}

#[test]
fn export_dot_writes_a_digraph() {
    let f = tmp("dot.mg", "monograph A { x: ; y: x x; }\n");
    let o = mg(&["export-dot", f.to_str().unwrap(), "A"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("digraph"));
}

#[test]
fn export_tikz_rejects_overlong_edges() {
    let f = tmp(
        "long.mg",
        "monograph A { a: ; long: a a a a a a a a a a; }\n",
    );
    let o = mg(&["export-tikz", f.to_str().unwrap(), "A"]);
    assert_eq!(code(&o), 1);
}
