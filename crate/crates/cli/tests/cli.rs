use std::path::PathBuf;
use std::process::Command;

use bpr_cli::report::RunReport;
use bpr_cli::{run, CensusReport, Cli};
use clap::Parser;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn bpr(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_bpr")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf8"),
        String::from_utf8(out.stderr).expect("utf8"),
    )
}

/// In-process run, for speed.
fn call(args: &[&str]) -> (i32, String) {
    let cli = Cli::try_parse_from(std::iter::once("bpr").chain(args.iter().copied())).expect("valid arguments");
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(cli, &mut out, &mut err);
    (code, String::from_utf8(out).expect("utf8"))
}

fn golden(name: &str, args: &[&str], want_code: i32) {
    let (code, out) = call(args);
    assert_eq!(code, want_code, "{name}: {out}");
    let mut value: serde_json::Value = serde_json::from_str(&out).expect("JSON report");
    value["timings"] = serde_json::Value::Null;
    let got = serde_json::to_string_pretty(&value).unwrap() + "\n";
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"));
    if std::env::var_os("BPR_BLESS").is_some() {
        std::fs::write(&path, &got).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}; run with BPR_BLESS=1", path.display()));
    assert_eq!(got, want, "{name} report drifted from {}", path.display());
}

#[test]
fn golden_k5_ic() {
    golden("k5_ic", &["recognize", &data("k5.g6"), "--mode", "ic", "--emit", "all", "--json"], 0);
}

#[test]
fn golden_k6_ic() {
    golden("k6_ic", &["recognize", &data("k6.txt"), "--mode", "ic", "--emit", "all", "--json"], 1);
}

#[test]
fn golden_k7_1p() {
    golden("k7_1p", &["recognize", &data("k7.g6"), "--mode", "1p", "--emit", "all", "--json"], 1);
}

#[test]
fn exit_codes_from_the_binary() {
    assert_eq!(bpr(&["recognize", &data("k5.g6"), "--mode", "ic"]).0, 0);
    let (code, out, _) = bpr(&["recognize", &data("k6.txt"), "--mode", "ic"]);
    assert_eq!(code, 1);
    assert!(out.contains("edge bound"), "{out}");
    let (code, _, err) = bpr(&["recognize", &data("truncated.txt")]);
    assert_eq!(code, 2);
    assert!(err.contains("header announces 15 edges"), "{err}");
    assert_eq!(bpr(&["recognize", &data("missing.txt")]).0, 2);
}

#[test]
fn report_round_trips() {
    let (_, out) = call(&["recognize", &data("k5.g6"), "--mode", "nic", "--emit", "all", "--json"]);
    let r: RunReport = serde_json::from_str(&out).unwrap();
    let again = serde_json::to_string_pretty(&r).unwrap() + "\n";
    assert_eq!(again, out);
    assert_eq!(r.version, 1);
    assert!(r.witness.is_some() && r.coloring.is_some() && r.formula.is_some());
}

#[test]
fn emit_selects_sections() {
    let (_, out) = call(&["recognize", &data("k5.g6"), "--emit", "coloring", "--json"]);
    let r: RunReport = serde_json::from_str(&out).unwrap();
    assert!(r.coloring.is_some() && r.formula.is_none() && r.witness.is_none());
    let (_, text) = call(&["recognize", &data("k5.g6"), "--emit", "formula"]);
    assert!(text.contains("eta: "), "{text}");
}

#[test]
fn classify_k6_and_optimal_q3() {
    let (code, out) = call(&["classify", &data("k6.txt"), "--mode", "1p", "--json"]);
    assert_eq!(code, 0);
    let r: RunReport = serde_json::from_str(&out).unwrap();
    let c = r.classification.unwrap();
    assert_eq!((c.triangulated_member, c.maximal, c.optimal), (true, Some(true), false));

    let dir = tempfile::tempdir().unwrap();
    let q3 = dir.path().join("q3.txt").display().to_string();
    assert_eq!(call(&["gen", "optimal-q3", "--out", &q3]).0, 0);
    let (code, out) = call(&["classify", &q3, "--json"]);
    assert_eq!(code, 0);
    let r: RunReport = serde_json::from_str(&out).unwrap();
    assert!(r.classification.unwrap().optimal);
}

#[test]
fn census_counts() {
    let (code, out) = call(&["census", &data("k5.g6"), "--json"]);
    assert_eq!(code, 0);
    let c: CensusReport = serde_json::from_str(&out).unwrap();
    assert_eq!((c.count, c.classes), (15, 1));
    let (_, out) = call(&["census", &data("k5.g6"), "--constraints", &data("outer012.json"), "--json"]);
    let c: CensusReport = serde_json::from_str(&out).unwrap();
    assert_eq!(c.classes, 3);
    let (code, out) = call(&["census", &data("k7.g6"), "--json"]);
    assert_eq!(code, 1);
    let c: CensusReport = serde_json::from_str(&out).unwrap();
    assert_eq!(c.count, 0);
}

#[test]
fn census_refuses_large_graphs() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("big.txt").display().to_string();
    call(&["gen", "optimal-cubes:3", "--out", &p]);
    let (code, _, err) = bpr(&["census", &p]);
    assert_eq!(code, 2);
    assert!(err.contains("limited to 8"), "{err}");
}

#[test]
fn gen_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for (family, format) in [("optimal-q3", "edgelist"), ("optimal-cubes:4", "graph6"), ("k5-star:3", "graph6")] {
        let p = dir.path().join(format!("{family}.{format}")).display().to_string();
        assert_eq!(call(&["gen", family, "--format", format, "--out", &p]).0, 0);
        let text = std::fs::read_to_string(&p).unwrap();
        let parsed = bpr_cli::input::parse(&text, None).unwrap();
        assert_eq!(parsed, bpr_generators::family(family).unwrap(), "{family}");
    }
    let (_, out) = call(&["gen", "optimal-q3"]);
    assert!(out.starts_with("8 24\n"), "{out}");
}

#[test]
fn render_svg_and_dot() {
    let (code, svg) = call(&["render", &data("k5.g6"), "--svg"]);
    assert_eq!(code, 0);
    assert_eq!(svg.matches("class=\"crossing\"").count(), 1);
    assert!(svg.contains("stroke=\"red\"") && svg.contains("stroke=\"blue\""));
    let (_, dot) = call(&["render", &data("k6.txt"), "--mode", "ic", "--dot"]);
    assert!(dot.starts_with("graph G {"));
    assert!(!dot.contains("crossing") && !dot.contains("color="), "{dot}");
    assert_eq!(dot.matches(" -- ").count(), 15);
}

#[test]
fn render_from_saved_report() {
    let dir = tempfile::tempdir().unwrap();
    let rep = dir.path().join("k5.json");
    let (_, out) = call(&["recognize", &data("k5.g6"), "--emit", "all", "--json"]);
    std::fs::write(&rep, out).unwrap();
    let (code, dot) = call(&["render", &data("k5.g6"), "--report", &rep.display().to_string(), "--dot"]);
    assert_eq!(code, 0);
    assert_eq!(dot.matches("// crossing").count(), 1);
}
