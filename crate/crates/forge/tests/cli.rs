//! The `forge` binary end to end.

use std::process::{Command, Output};

use serde_json::Value;

fn forge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_forge")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn clause<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["clauses"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap_or_else(|| panic!("no clause {name}"))
}

#[test]
fn reproduce_chain_two() {
    let out = forge(&["reproduce", "chain(2)"]);
    assert_eq!(out.status.code(), Some(0));
    let r = stdout_json(&out);
    assert_eq!(clause(&r, "systole_count")["values"]["traced"], "6");
    assert_eq!(clause(&r, "dtilde_determinant")["values"]["determinant"], "-4");
    assert_eq!(clause(&r, "genus")["values"]["euler"], "2");
    assert!(r["clauses"].as_array().unwrap().iter().all(|c| c["anchor"].as_str().is_some_and(|a| !a.is_empty())));
}

#[test]
fn reproduce_k5_and_tower() {
    let r = stdout_json(&forge(&["reproduce", "k5"]));
    assert_eq!(r["passed"], true);
    assert_eq!(clause(&r, "determinant")["values"]["determinant"], "48");
    assert_eq!(clause(&r, "systole_count")["values"]["traced"], "20");
    let t = stdout_json(&forge(&["reproduce", "doubled_theta_tower(3,2)"]));
    assert_eq!(clause(&t, "final_girth")["values"]["girth"], "8");
    assert_eq!(t["passed"], true);
}

#[test]
fn reports_are_byte_identical() {
    let a = forge(&["reproduce", "chain(4)"]);
    let b = forge(&["reproduce", "chain(4)"]);
    assert_eq!(a.stdout, b.stdout);
    let timed = stdout_json(&forge(&["reproduce", "chain(4)", "--timings"]));
    assert!(timed["timings"].is_array());
    assert_eq!(timed["digest"], stdout_json(&a)["digest"]);
}

#[test]
fn lemma_ranges() {
    let out = forge(&["verify-lemmas", "--q", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let full = stdout_json(&forge(&["verify-lemmas", "--q", "3..12"]));
    assert_eq!(full["passed"], true);
    assert_eq!(clause(&full, "margins_monotone")["passed"], true);
    let bad = forge(&["verify-lemmas", "--q", "2"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("outside"));
}

#[test]
fn failing_clause_sets_exit_code_one() {
    // a tolerance below rounding error makes the holonomy clauses fail
    let out = forge(&["reproduce", "chain(2)", "--tolerance", "1e-30"]);
    assert_eq!(out.status.code(), Some(1));
    let r = stdout_json(&out);
    assert_eq!(r["passed"], false);
    assert_eq!(clause(&r, "holonomy_right_angled")["passed"], false);
}

#[test]
fn exports() {
    let dot = forge(&["export", "intersection:k5", "--format", "dot"]);
    let text = String::from_utf8(dot.stdout).unwrap();
    assert_eq!(text.matches("fillcolor=").count(), 20);
    assert!(text.contains("fillcolor=red") && text.contains("fillcolor=blue"));

    let json = forge(&["export", "cover:theta:3"]);
    let doc: forge::formats::CoverDoc = serde_json::from_slice(&json.stdout).unwrap();
    let c = forge_core::covers::mod2_homology_cover(&forge_core::graph::catalog::theta(3), 1 << 20).unwrap();
    assert_eq!(doc.to_cover().unwrap().total(), c.total());

    let report = stdout_json(&forge(&["export", "report:chain(3)"]));
    let det = clause(&report, "dtilde_determinant");
    assert_eq!(det["values"]["determinant"], "0");
    assert_eq!(det["passed"], true);

    assert_eq!(forge(&["export", "report:chain(3)", "--format", "dot"]).status.code(), Some(2));
    assert_eq!(forge(&["export", "nonsense:1"]).status.code(), Some(2));
}

#[test]
fn assemble_then_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let surface = dir.path().join("surface.json");
    let report = dir.path().join("report.json");
    let out = forge(&[
        "assemble", "--map", "cube", "--graph", "theta:6", "--double", "1",
        "--out", surface.to_str().unwrap(), "--report", report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(clause(&r, "genus")["values"]["euler"], "129");
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&surface).unwrap()).unwrap();
    let keys: Vec<&str> = doc.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(&keys[..4], ["block", "gluing", "curves", "genus"]);

    let analyzed = forge(&["analyze", "--surface", surface.to_str().unwrap()]);
    assert_eq!(analyzed.status.code(), Some(0));
    assert_eq!(clause(&stdout_json(&analyzed), "systole_count")["values"]["traced"], "384");
}

#[test]
fn assemble_by_search() {
    let out = forge(&["assemble", "--map", "tetrahedron", "--graph", "complete:5"]);
    assert_eq!(out.status.code(), Some(0));
    let r = stdout_json(&out);
    assert_eq!(clause(&r, "gluing_found")["passed"], true);
    assert_eq!(clause(&r, "genus")["values"]["euler"], "6");
}

#[test]
fn cover_double_and_certify() {
    let dir = tempfile::tempdir().unwrap();
    let cover = dir.path().join("cover.json");
    let out = forge(&["cover", "double", "--graph", "theta:3", "--iterations", "2", "--out", cover.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(clause(&stdout_json(&out), "final_girth")["values"]["girth"], "8");
    let cert = forge(&["cover", "certify", "--cover", cover.to_str().unwrap()]);
    // the composite cover of theta(3) goes straight from girth 2 to 8, so it does not double girth
    assert_eq!(cert.status.code(), Some(1));
    let r = stdout_json(&cert);
    assert_eq!(clause(&r, "level_1_doubles_girth")["passed"], false);

    let single = dir.path().join("single.json");
    forge(&["export", "cover:theta:4", "--out", single.to_str().unwrap()]);
    let ok = forge(&["cover", "certify", "--cover", single.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn cover_size_cap() {
    let out = forge(&["cover", "double", "--graph", "theta:5", "--max-cover-size", "10"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("forge.toml");
    std::fs::write(&cfg, "theta = 1.1\ntolerance = 1e-7\n").unwrap();
    let c = cfg.to_str().unwrap();
    let from_file = stdout_json(&forge(&["reproduce", "chain(2)", "--config", c]));
    assert_eq!(clause(&from_file, "holonomy_deformed")["values"]["theta"], 1.1);
    assert_eq!(clause(&from_file, "holonomy_deformed")["values"]["tolerance"], 1e-7);
    let flag = stdout_json(&forge(&["reproduce", "chain(2)", "--config", c, "--theta", "1.2"]));
    assert_eq!(clause(&flag, "holonomy_deformed")["values"]["theta"], 1.2);
    assert_eq!(forge(&["reproduce", "chain(2)", "--config", "/nonexistent/forge.toml"]).status.code(), Some(2));
}

#[test]
fn maps_emit() {
    let out = forge(&["maps", "emit", "dodecahedron"]);
    let doc: forge::formats::MapDoc = serde_json::from_slice(&out.stdout).unwrap();
    let m = doc.to_map().unwrap();
    assert_eq!((m.graph().num_vertices(), m.num_faces()), (20, 12));
    let dot = String::from_utf8(forge(&["maps", "emit", "cube", "--format", "dot"]).stdout).unwrap();
    assert_eq!(dot.matches(" -- ").count(), 12);
    assert_eq!(forge(&["maps", "emit", "klein_bottle"]).status.code(), Some(2));
}
