use std::io::Write;
use std::path::PathBuf;

use helm_core::cli::run;
use helm_core::fixtures;
use serde_json::Value;
use tempfile::TempDir;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn helm(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("helm").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Run { code, out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

fn file(dir: &TempDir, name: &str, text: &str) -> String {
    let path: PathBuf = dir.path().join(name);
    std::fs::File::create(&path).unwrap().write_all(text.as_bytes()).unwrap();
    path.to_str().unwrap().to_owned()
}

fn json(r: &Run) -> Value {
    assert_eq!(r.code, 0, "stderr: {}", r.err);
    serde_json::from_str(&r.out).unwrap()
}

#[test]
fn nullity_reports() {
    let dir = TempDir::new().unwrap();
    let kite = file(&dir, "kite.edges", fixtures::KITE_EDGE_LIST);
    let v = json(&helm(&["nullity", &kite]));
    assert_eq!(v["eta_exact"], 0);
    assert_eq!(v["t"], 2);

    let k4 = file(&dir, "k4.edges", fixtures::K4_EDGE_LIST);
    let r = helm(&["nullity", &k4]);
    assert_eq!(
        r.out.trim(),
        r#"{"n":4,"m":6,"t":4,"omega":1,"rank_b":3,"rank_c":3,"eta_exact":0,"eta_predicted":-1,"triangles_independent":false}"#
    );

    let two = file(&dir, "two.edges", "1 2\n2 3\n3 1\n4 5\n5 6\n6 7\n7 4\n");
    let v = json(&helm(&["nullity", "--per-component", &two]));
    assert_eq!(v["components"].as_array().unwrap().len(), 2);
    assert_eq!(v["total"]["eta_exact"], 1);
    assert_eq!(v["total"]["omega"], 2);
}

#[test]
fn helmholtzian_verify() {
    let dir = TempDir::new().unwrap();
    let kite = file(&dir, "kite.edges", fixtures::KITE_EDGE_LIST);
    let r = helm(&["helmholtzian", "--method", "verify", "--format", "table", &kite]);
    assert_eq!(r.code, 0);
    assert!(r.out.trim_end().ends_with("equivalence: ok"));

    let r = helm(&["helmholtzian", "--method", "verify", &kite]);
    let v = json(&r);
    assert_eq!(r.err.trim(), "equivalence: ok");
    let rows: Vec<Vec<i64>> = serde_json::from_value(v["matrix"].clone()).unwrap();
    assert_eq!(rows, fixtures::kite_h_rows());
    assert_eq!(v["provenance"], "verified-both");

    for method in ["product", "entrywise"] {
        let v = json(&helm(&["helmholtzian", "--method", method, &kite]));
        assert_eq!(serde_json::from_value::<Vec<Vec<i64>>>(v["matrix"].clone()).unwrap(), fixtures::kite_h_rows());
    }

    let r = helm(&["helmholtzian", "--format", "matrixmarket", &kite]);
    assert!(r.out.starts_with("%%MatrixMarket matrix coordinate integer general\n"));
}

#[test]
fn incidence_and_info() {
    let dir = TempDir::new().unwrap();
    let kite = file(&dir, "kite.edges", fixtures::KITE_EDGE_LIST);
    let v = json(&helm(&["incidence", &kite]));
    assert_eq!(serde_json::from_value::<Vec<Vec<i64>>>(v["b"].clone()).unwrap(), fixtures::kite_b_rows());
    assert_eq!(v["c"].as_array().unwrap().len(), 2);

    let v = json(&helm(&["info", &kite]));
    assert_eq!(v["triangle_degrees"], serde_json::json!([0, 1, 1, 1, 1, 2]));
    assert_eq!(v["omega"], 1);
}

#[test]
fn kernel_spectrum_triangles() {
    let dir = TempDir::new().unwrap();
    let c4 = file(&dir, "c4.edges", "1 2\n2 3\n3 4\n1 4\n");
    let v = json(&helm(&["kernel", &c4]));
    assert_eq!(v["dimension"], 1);
    assert_eq!(v["basis"], serde_json::json!([["-1/1", "-1/1", "-1/1", "1/1"]]));

    let v = json(&helm(&["spectrum", &c4]));
    assert_eq!(v["near_zero"], 1);
    assert_eq!(v["eta_exact"], 1);

    let k4 = file(&dir, "k4.edges", fixtures::K4_EDGE_LIST);
    let v = json(&helm(&["triangles", &k4]));
    assert_eq!(v["enumerated"], 4);
    assert_eq!(v["predicted"], 3);
    assert_eq!(v["triangles_independent"], false);
}

#[test]
fn decompose_and_rank() {
    let dir = TempDir::new().unwrap();
    let k3 = file(&dir, "k3.edges", "1 2\n1 3\n2 3\n");
    let flow = file(&dir, "flow.txt", "# gradient of (0, 1, 3)\n1\n3\n\n2\n");
    let v = json(&helm(&["decompose", &k3, &flow]));
    let grad: Vec<f64> = serde_json::from_value(v["gradient_part"].clone()).unwrap();
    for (a, b) in grad.iter().zip([1.0, 3.0, 2.0]) {
        assert!((a - b).abs() < 1e-12);
    }

    let v = json(&helm(&["rank", &k3, &flow]));
    let p: Vec<f64> = serde_json::from_value(v["potential"].clone()).unwrap();
    for (a, b) in p.iter().zip([-4.0 / 3.0, -1.0 / 3.0, 5.0 / 3.0]) {
        assert!((a - b).abs() < 1e-12);
    }
    assert!((v["consistency_ratio"].as_f64().unwrap() - 1.0).abs() < 1e-12);

    let zero = file(&dir, "zero.txt", "0\n0\n0\n");
    let v = json(&helm(&["rank", &k3, &zero]));
    assert_eq!(v["degenerate"], true);

    let short = file(&dir, "short.txt", "1\n");
    assert_eq!(helm(&["decompose", &k3, &short]).code, 1);
    let bad = file(&dir, "bad.txt", "1\nx\n2\n");
    let r = helm(&["decompose", &k3, &bad]);
    assert_eq!(r.code, 1);
    assert!(r.err.contains("line 2"), "{}", r.err);
}

#[test]
fn selftest_and_structure() {
    let r = helm(&["selftest"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.out.lines().count(), 9);
    assert!(r.out.lines().all(|l| l.starts_with("PASS ")));

    let dir = TempDir::new().unwrap();
    let k4 = file(&dir, "k4.edges", fixtures::K4_EDGE_LIST);
    let v = json(&helm(&["structure", &k4]));
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 6);
    assert!(checks.iter().all(|c| c["eta_after"] == 1 && c["expected_after"] == 2));
}

#[test]
fn generate_is_deterministic() {
    let a = helm(&["generate", "gnp", "8", "0.5", "--seed", "11", "--random-orientation"]);
    let b = helm(&["generate", "gnp", "8", "0.5", "--seed", "11", "--random-orientation"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.out, b.out);
    let tree = helm(&["generate", "tree", "12", "--seed", "4"]);
    assert_eq!(tree.out.lines().count(), 11);
    let k5 = helm(&["generate", "complete", "5"]);
    assert_eq!(k5.out.lines().count(), 10);
    assert_eq!(helm(&["generate", "gnp", "5", "1.5"]).code, 1);
}

#[test]
fn input_errors() {
    let dir = TempDir::new().unwrap();
    let loops = file(&dir, "loop.edges", "1 2\n3 3\n");
    let r = helm(&["info", &loops]);
    assert_eq!(r.code, 1);
    assert!(r.err.contains("record 2"), "{}", r.err);

    let dup = file(&dir, "dup.edges", "1 2\n2 1\n");
    assert_eq!(helm(&["info", &dup]).code, 1);
    assert_eq!(helm(&["info", "/nonexistent/graph"]).code, 1);
    assert_eq!(helm(&["--unknown-flag", "info", "x"]).code, 1);
    assert_eq!(helm(&["nullity", "--tol", "0", &loops]).code, 1);
    assert_eq!(helm(&[]).code, 1);
    assert_eq!(helm(&["--help"]).code, 0);
}
