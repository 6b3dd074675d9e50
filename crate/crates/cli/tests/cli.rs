use std::process::{Command, Output};

use serde_json::Value;
use wordrep::formats::{from_graph6, from_sparse6, to_graph6};
use wordrep::Graph;

fn wordrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wordrep")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}\n{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn g6(g: &Graph) -> String {
    to_graph6(g)
}

fn verify_file(doc: &Value) -> (i32, Value) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("doc.json");
    std::fs::write(&path, serde_json::to_string(doc).unwrap()).unwrap();
    let out = wordrep(&["verify", path.to_str().unwrap()]);
    (code(&out), json(&out))
}

#[test]
fn check_wr_on_c5() {
    let out = wordrep(&["check", "--wr", "DUW"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["result"]["value"], true);
    assert_eq!(doc["certificates"][0]["kind"], "semi-transitive-orientation");
    assert_eq!(verify_file(&doc).0, 0);
}

#[test]
fn check_wr_on_the_eight_vertex_graph() {
    let out = wordrep(&["check", "--wr", &g6(&Graph::eight_vertex_extremal())]);
    let doc = json(&out);
    assert_eq!(doc["result"]["value"], false);
    assert_eq!(doc["certificates"][0]["kind"], "non-representable-witness");
    assert!(doc["certificates"][0]["vertices"].as_array().unwrap().len() <= 7);
    assert_eq!(verify_file(&doc).0, 0);
}

#[test]
fn check_comparability_and_minimality() {
    let out = wordrep(&["check", "--comparability", &g6(&Graph::path(4))]);
    assert_eq!(json(&out)["result"]["value"], true);
    let out = wordrep(&["check", "--comparability", "Dhc"]);
    assert_eq!(json(&out)["result"]["value"], false);

    let out = wordrep(&["check", "--minimal", &g6(&Graph::wheel(5))]);
    let doc = json(&out);
    assert_eq!(doc["result"]["value"], true);
    assert_eq!(verify_file(&doc).0, 0);
    let out = wordrep(&["check", "--minimal", &g6(&Graph::eight_vertex_extremal())]);
    let doc = json(&out);
    assert_eq!(doc["result"]["value"], false);
    assert_eq!(verify_file(&doc).0, 0);
}

#[test]
fn words_are_attached_on_request() {
    let out = wordrep(&["check", "--wr", "Dhc", "--max-occurrence", "3"]);
    let doc = json(&out);
    assert_eq!(doc["certificates"][1]["kind"], "word");
    assert_eq!(verify_file(&doc).0, 0);
}

#[test]
fn input_errors_exit_with_two() {
    let out = wordrep(&["check", "--wr", "Dh"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));
    assert_eq!(code(&wordrep(&["check", "--wr", "&B?"])), 2);
    assert_eq!(code(&wordrep(&["check", "--wr", "Dhc", "--format", "dot"])), 2);
}

#[test]
fn exhausted_budget_exits_with_three() {
    let out = wordrep(&["check", "--wr", "--budget", "1", &g6(&Graph::eight_vertex_extremal())]);
    assert_eq!(code(&out), 3);
    assert_eq!(json(&out)["status"], "unknown");
}

#[test]
fn stdin_and_file_inputs() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_wordrep"))
        .args(["check", "--wr", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"Dhc\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(json(&out)["result"]["value"], true);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.s6");
    std::fs::write(&path, ":Fa@x^\n").unwrap();
    let out = wordrep(&["check", "--comparability", path.to_str().unwrap()]);
    assert_eq!(json(&out)["host"], g6(&from_sparse6(":Fa@x^").unwrap()));
}

#[test]
fn mu_by_search() {
    let doc = json(&wordrep(&["mu", &g6(&Graph::wheel(5))]));
    assert_eq!(doc["result"]["value"], 2);
    assert_eq!(doc["result"]["exact"], true);
    assert_eq!(verify_file(&doc).0, 0);
    let doc = json(&wordrep(&["mu", &g6(&Graph::path(5))]));
    assert_eq!(doc["result"]["value"], 1);
}

#[test]
fn mu_minimal_product_construction() {
    let w5 = g6(&Graph::wheel(5));
    let out = wordrep(&["mu", "--constructive", "minimal-product", "--outer", &w5, "--inner", &w5, "--r", "2"]);
    let doc = json(&out);
    assert_eq!(doc["result"]["value"], 3);
    assert_eq!(doc["result"]["lower_bound"], 2);
    assert_eq!(doc["result"]["provenance"], "minimal-product");
    assert_eq!(verify_file(&doc).0, 0);
}

#[test]
fn mu_other_constructions() {
    let w5 = g6(&Graph::wheel(5));
    let cases: [(&[&str], u64); 4] = [
        (&["--constructive", "product-two", "--outer", "Bw", "--inner", "Dhc"], 2),
        (&["--constructive", "product-general", "--outer", &w5, "--inner", &w5], 4),
        (&["--constructive", "product-tight", "--outer", &w5, "--inner", "Dhc"], 2),
        (&["--constructive", "power-comparability", "--base", "Dhc", "--k", "2", "--split", "0-1,1-2"], 2),
    ];
    for (args, parts) in cases {
        let mut full = vec!["mu"];
        full.extend_from_slice(args);
        let doc = json(&wordrep(&full));
        assert_eq!(doc["result"]["value"], parts, "{args:?}");
        assert_eq!(verify_file(&doc).0, 0, "{args:?}");
    }
}

#[test]
fn lex_sidecar_feeds_constructive_mu() {
    let dir = tempfile::tempdir().unwrap();
    let side = dir.path().join("power.json");
    let out = wordrep(&["lex", "power", "Dhc", "--k", "3", "--sidecar", side.to_str().unwrap()]);
    let host = from_graph6(String::from_utf8_lossy(&out.stdout).trim()).unwrap();
    assert_eq!(host.n(), 125);
    let doc = json(&wordrep(&["mu", "--constructive", "power", "--structure", side.to_str().unwrap()]));
    assert_eq!(doc["host"], to_graph6(&host));
    assert!(doc["result"]["value"].as_u64().unwrap() <= 3);
    assert_eq!(verify_file(&doc).0, 0);
}

#[test]
fn lex_outputs() {
    let h = g6(&Graph::eight_vertex_extremal());
    let out = wordrep(&["lex", "power", &h, "--k", "2"]);
    assert_eq!(from_graph6(String::from_utf8_lossy(&out.stdout).trim()).unwrap().n(), 64);

    let out = wordrep(&["lex", "product", "A_", "A_"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), g6(&Graph::complete(4)));

    let out = wordrep(&["lex", "map", "Dhc", "Bw", "--edges", ""]);
    let g = from_graph6(String::from_utf8_lossy(&out.stdout).trim()).unwrap();
    assert_eq!((g.n(), g.edge_count()), (15, 0));

    let out = wordrep(&["--format", "json", "lex", "special", "Dhc", "Bw", "--edges", "0-1,1-2,2-3,3-4,0-4", "--fill", "0:0-1"]);
    let v = json(&out);
    assert_eq!(v["structure"]["outer_n"], 5);
    assert_eq!(v["structure"]["inner_n"], 3);
    assert_eq!(from_graph6(v["graph6"].as_str().unwrap()).unwrap().edge_count(), 5 * 9 + 1);

    let out = wordrep(&["--format", "dot", "lex", "product", "A_", "@"]);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("graph G {"));
}

#[test]
fn eta_values() {
    let h = g6(&Graph::eight_vertex_extremal());
    let doc = json(&wordrep(&["eta", &h, "--blockers"]));
    assert_eq!(doc["result"]["value"], 6);
    let (status, report) = verify_file(&doc);
    assert_eq!(status, 0);
    assert!(report["notes"].as_array().unwrap().is_empty());
    assert_eq!(json(&wordrep(&["eta", &g6(&Graph::complete(6))]))["result"]["value"], 6);
    assert_eq!(json(&wordrep(&["eta", &g6(&Graph::wheel(5))]))["result"]["value"], 5);
}

#[test]
fn tampered_documents_fail_verification() {
    // Any single flip of a transitive orientation of P3 creates a directed P3.
    let doc = json(&wordrep(&["check", "--comparability", &g6(&Graph::path(3))]));
    assert_eq!(verify_file(&doc).0, 0);
    let mut flipped = doc.clone();
    let arc = &mut flipped["certificates"][0]["arcs"][0];
    let (u, v) = (arc[0].clone(), arc[1].clone());
    *arc = serde_json::json!([v, u]);
    let (status, report) = verify_file(&flipped);
    assert_eq!(status, 1);
    assert_eq!(report["status"], "invalid");

    let mut doc = json(&wordrep(&["mu", &g6(&Graph::wheel(5))]));
    doc["certificates"][0]["parts"].as_array_mut().unwrap().remove(0);
    let (status, report) = verify_file(&doc);
    assert_eq!(status, 1);
    let msg = report["message"].as_str().unwrap();
    assert!(msg.contains("host edge") && msg.contains("is not covered"), "{msg}");

    let out = wordrep(&["verify", "{not json"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn tau_from_labelled_graphs_and_corpus() {
    assert_eq!(json(&wordrep(&["tau", "--n", "5"]))["result"]["value"], 5);
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("six.g6");
    let text = [Graph::cycle(6), Graph::wheel(5), Graph::complete(6)].iter().map(g6).collect::<Vec<_>>().join("\n");
    std::fs::write(&corpus, text).unwrap();
    let doc = json(&wordrep(&["tau", "--n", "6", corpus.to_str().unwrap()]));
    assert_eq!(doc["result"]["value"], 5);
    assert_eq!(doc["result"]["argmin"], 1);
    assert_eq!(verify_file(&doc).0, 0);
    assert_eq!(code(&wordrep(&["tau", "--n", "8", corpus.to_str().unwrap()])), 2);
}

#[test]
fn power_bound_is_deterministic() {
    let h = g6(&Graph::eight_vertex_extremal());
    let run = || json(&wordrep(&["power-bound", &h, "--k", "2", "--cap", "6", "--seed", "7"]));
    let untimed = |mut doc: Value| {
        doc["timing"] = Value::Null;
        doc["result"]["max_check_ms"] = Value::Null;
        doc
    };
    let first = run();
    assert_eq!(first["result"]["bound"], 36);
    assert_eq!(verify_file(&first).0, 0);
    assert_eq!(untimed(first), untimed(run()));
}

#[test]
fn jobs_flag_is_accepted() {
    let out = wordrep(&["--jobs", "2", "eta", &g6(&Graph::wheel(5))]);
    assert_eq!(code(&out), 0);
}
