use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn pcan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pcan"))
        .args(args)
        .output()
        .expect("failed to run pcan")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn generate(dir: &Path, kernel: &str, n: usize, count: usize, seed: u64) {
    let out = pcan(&[
        "generate",
        "--kernel",
        kernel,
        "--n",
        &n.to_string(),
        "--count",
        &count.to_string(),
        "--seed",
        &seed.to_string(),
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn census_writes_one_row_per_graph_and_config() {
    let dir = tempfile::tempdir().unwrap();
    generate(dir.path(), "constant:0.3", 12, 3, 1);
    let out_dir = dir.path().join("out");
    let out = pcan(&["census", "--manifest", p(&dir.path().join("manifest.csv")), "--out", p(&out_dir)]);
    assert!(out.status.success(), "{}", stderr(&out));
    let mut reader = csv::Reader::from_path(out_dir.join("census.csv")).unwrap();
    assert_eq!(
        reader.headers().unwrap().iter().collect::<Vec<_>>(),
        ["graph_id", "config", "count", "max_count", "density"]
    );
    assert_eq!(reader.records().count(), 27);
}

#[test]
fn census_mode_flag_switches_to_induced_counts() {
    let dir = tempfile::tempdir().unwrap();
    // A 4-cycle with one chord: one 4-cycle copy, no induced 4-cycle.
    fs::write(dir.path().join("g.edges"), "0 1\n1 2\n2 3\n3 0\n0 2\n").unwrap();
    fs::write(dir.path().join("m.csv"), "id,path\ng,g.edges\n").unwrap();
    let cycle4 = |mode: &str| -> String {
        let out_dir = dir.path().join(mode);
        let out = pcan(&[
            "census", "--manifest", p(&dir.path().join("m.csv")), "--configs", "cycle4", "--mode", mode, "--out", p(&out_dir),
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
        let mut reader = csv::Reader::from_path(out_dir.join("census.csv")).unwrap();
        reader.records().next().unwrap().unwrap()[2].to_string()
    };
    assert_eq!(cycle4("copies"), "1");
    assert_eq!(cycle4("induced"), "0");
}

#[test]
fn census_missing_graph_file_names_the_row() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("a.edges"), "0 1\n").unwrap();
    fs::write(dir.path().join("m.csv"), "id,path\na,a.edges\nb,nope.edges\n").unwrap();
    let out = pcan(&["census", "--manifest", p(&dir.path().join("m.csv")), "--out", p(dir.path())]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("row 2"), "{}", stderr(&out));
}

#[test]
fn embed_pcan_all_components() {
    let dir = tempfile::tempdir().unwrap();
    generate(dir.path(), "block:0,0;0,0.5@0.3", 40, 20, 3);
    let out_dir = dir.path().join("out");
    let out = pcan(&[
        "embed", "--manifest", p(&dir.path().join("manifest.csv")), "--algo", "pcan", "--r", "all", "--out", p(&out_dir), "--gnuplot",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let result = read_json(&out_dir.join("result.json"));
    assert_eq!(result["eigenvalues"].as_array().unwrap().len(), 9);
    let total: f64 = result["variance_explained"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).sum();
    assert!((total - 1.0).abs() < 1e-12);
    assert_eq!(result["loadings"]["configs"][0], "isolate");

    let mut scores = csv::Reader::from_path(out_dir.join("scores.csv")).unwrap();
    assert_eq!(scores.headers().unwrap().len(), 2 + 9);
    assert_eq!(scores.records().count(), 20);
    let mut contributions = csv::Reader::from_path(out_dir.join("contributions.csv")).unwrap();
    let pc1: f64 = contributions
        .records()
        .map(|r| r.unwrap())
        .filter(|r| &r[1] == "1")
        .map(|r| r[2].parse::<f64>().unwrap())
        .sum();
    assert!((pc1 - 100.0).abs() < 1e-9);
    for file in ["scree.csv", "scree.gp", "scores.gp"] {
        assert!(out_dir.join(file).exists(), "{file}");
    }
}

#[test]
fn embed_spcan_is_deterministic_apart_from_runtime() {
    let dir = tempfile::tempdir().unwrap();
    generate(dir.path(), "constant:0.2", 60, 8, 4);
    let run = |name: &str| {
        let out_dir = dir.path().join(name);
        let out = pcan(&[
            "embed", "--manifest", p(&dir.path().join("manifest.csv")), "--algo", "spcan", "--seed", "7", "--out", p(&out_dir),
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
        let mut json = read_json(&out_dir.join("result.json"));
        json.as_object_mut().unwrap().remove("runtime_secs");
        (json, fs::read(out_dir.join("scores.csv")).unwrap())
    };
    assert_eq!(run("a"), run("b"));
}

#[test]
fn embed_spcan_echoes_default_tau_and_k() {
    let dir = tempfile::tempdir().unwrap();
    generate(dir.path(), "constant:0.05", 264, 3, 5);
    let out_dir = dir.path().join("out");
    let out = pcan(&["embed", "--manifest", p(&dir.path().join("manifest.csv")), "--algo", "spcan", "--out", p(&out_dir)]);
    assert!(out.status.success(), "{}", stderr(&out));
    let result = read_json(&out_dir.join("result.json"));
    assert_eq!(result["settings"]["tau"], 12);
    assert_eq!(result["settings"]["K"], 22);
    assert_eq!(result["partitions"].as_array().unwrap().len(), 3);
}

#[test]
fn embed_rejects_infeasible_partitions() {
    let dir = tempfile::tempdir().unwrap();
    generate(dir.path(), "constant:0.05", 100, 3, 5);
    let manifest = dir.path().join("manifest.csv");
    let out = pcan(&["embed", "--manifest", p(&manifest), "--algo", "spcan", "--tau", "12", "--K", "9", "--out", p(dir.path())]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("2*max_j|F_j| <= tau <= n_min/K"), "{}", stderr(&out));
}

#[test]
fn embed_usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    generate(dir.path(), "constant:0.2", 30, 3, 5);
    let manifest = dir.path().join("manifest.csv");
    let out = pcan(&["embed", "--manifest", p(&manifest), "--algo", "pcan", "--tau", "12", "--out", p(dir.path())]);
    assert_eq!(out.status.code(), Some(2));
    let out = pcan(&["embed", "--manifest", p(&manifest), "--r", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = pcan(&["embed", "--manifest", p(&manifest), "--configs", "hexagon"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn generate_empty_graphs_keep_every_vertex() {
    let dir = tempfile::tempdir().unwrap();
    generate(dir.path(), "constant:0", 50, 2, 1);
    let text = fs::read_to_string(dir.path().join("graph_0000.edges")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 50);
    assert!(lines.iter().all(|l| l.split_whitespace().count() == 1));
    let sidecar = read_json(&dir.path().join("graph_0001.json"));
    assert_eq!(sidecar["kernel"]["kind"], "constant");
    assert_eq!(sidecar["latents"].as_array().unwrap().len(), 50);
    let manifest = fs::read_to_string(dir.path().join("manifest.csv")).unwrap();
    assert_eq!(manifest.lines().count(), 3);
}

#[test]
fn generate_writes_requested_count() {
    let dir = tempfile::tempdir().unwrap();
    generate(dir.path(), "constant:0.3", 50, 10, 1);
    let edges = fs::read_dir(dir.path())
        .unwrap()
        .filter(|e| e.as_ref().unwrap().path().extension().is_some_and(|x| x == "edges"))
        .count();
    assert_eq!(edges, 10);
}

#[test]
fn generate_rejects_invalid_kernels() {
    let dir = tempfile::tempdir().unwrap();
    let out = pcan(&["generate", "--kernel", "block:0.8,1.2;1.2,0.8", "--n", "10", "--out", p(dir.path())]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("outside [0, 1]"), "{}", stderr(&out));
}

#[test]
fn verify_single_check() {
    let out = pcan(&["verify", "--check", "mean_density", "--seed", "1"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let stdout = String::from_utf8(out.stdout).unwrap();
    let report: Value = serde_json::from_str(stdout.lines().next().unwrap()).unwrap();
    assert_eq!(report["name"], "mean_density");
    assert_eq!(report["status"], "pass");
}

#[test]
fn verify_fast_suite_emits_every_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = pcan(&["verify", "--all", "--fast", "--seed", "3", "--out", p(dir.path())]);
    let stdout = String::from_utf8(out.stdout).unwrap();
    let reports: Vec<Value> = stdout
        .lines()
        .take_while(|l| !l.is_empty())
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(reports.len(), 5);
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 5);
    assert!(out.status.success(), "{stdout}");
}

#[test]
fn verify_usage_errors_exit_2() {
    assert_eq!(pcan(&["verify", "--check", "bogus"]).status.code(), Some(2));
    assert_eq!(pcan(&["verify"]).status.code(), Some(2));
}

/// Keys and value kinds of a JSON document; arrays by their first element.
fn shape(v: &Value) -> Value {
    match v {
        Value::Object(map) => Value::Object(map.iter().map(|(k, v)| (k.clone(), shape(v))).collect()),
        Value::Array(items) => Value::Array(items.first().map(shape).into_iter().collect()),
        Value::String(_) => "string".into(),
        Value::Number(_) => "number".into(),
        Value::Bool(_) => "bool".into(),
        Value::Null => "null".into(),
    }
}

#[test]
fn result_schema_matches_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    generate(dir.path(), "block:0,0;0,0.6@0.25", 60, 6, 9);
    let out_dir = dir.path().join("out");
    let out = pcan(&[
        "embed", "--manifest", p(&dir.path().join("manifest.csv")), "--algo", "spcan", "--seed", "1", "--r", "2", "--out", p(&out_dir),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let result = read_json(&out_dir.join("result.json"));
    assert_eq!(result["schema_version"], 1);
    let golden_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/result_schema.json");
    let golden: Value = serde_json::from_str(&fs::read_to_string(golden_path).unwrap()).unwrap();
    assert_eq!(shape(&result), golden);
}
