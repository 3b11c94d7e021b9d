use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use k2tlab::constructions::{complete, cycle, petersen};
use k2tlab::{detect, graph6, Graph};
use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_k2tlab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn k2tlab")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--json", "-"];
    full.extend_from_slice(args);
    let o = run(&full);
    let v: Value = serde_json::from_slice(&o.stdout)
        .unwrap_or_else(|e| panic!("bad JSON from {args:?}: {e}\n{}", stdout(&o)));
    (v, o.status.code().unwrap())
}

fn write_graph(dir: &TempDir, name: &str, g: &Graph) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, format!("{}\n", g.to_graph6())).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn k5_minus_edge() -> Graph {
    let mut edges: Vec<_> = complete(5).edges().collect();
    edges.retain(|&e| e != (0, 1));
    Graph::build(5, &edges).unwrap()
}

#[test]
fn detect_exit_codes_follow_findings() {
    let dir = TempDir::new().unwrap();
    let c4 = write_graph(&dir, "c4.g6", &cycle(4).unwrap());
    let k5 = write_graph(&dir, "k5.g6", &complete(5));
    let pet = write_graph(&dir, "petersen.g6", &petersen());

    let (v, code) = json(&["detect", "--graph", s(&c4), "--t", "2"]);
    assert_eq!(code, 1);
    assert_eq!(v["results"]["found"], true);
    let cert = &v["results"]["certificate"];
    let g = cycle(4).unwrap();
    let (a, b) = (cert["a"].as_u64().unwrap() as usize, cert["b"].as_u64().unwrap() as usize);
    assert!(!g.has_edge(a, b));

    for path in [&k5, &pet] {
        let (v, code) = json(&["detect", "--graph", s(path), "--t", "2"]);
        assert_eq!(code, 0, "{v}");
        assert_eq!(v["results"]["found"], false);
        assert!(v["results"]["certificate"].is_null());
    }
}

#[test]
fn detect_reads_edge_lists() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("c4.txt");
    std::fs::write(&p, "4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
    let o = run(&["detect", "--graph", s(&p)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("found"));
}

#[test]
fn usage_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.g6");
    std::fs::write(&bad, "this is not a graph\n").unwrap();
    for args in [
        vec!["detect", "--graph", s(&bad)],
        vec!["detect", "--graph", "/nonexistent/file"],
        vec!["bounds", "--n", "100", "--alpha", "1.5"],
        vec!["bounds", "--n", "100", "--alpha", "0.5", "--t", "1"],
        vec!["verify", "--suite", "no-such-suite"],
        vec!["verify", "--suite", "beta", "--shard", "3/2"],
        vec!["ramsey", "--t", "3", "--r", "3", "--cap", "11"],
        vec!["generate", "polarity", "4"],
        vec!["generate", "turan", "--n", "6"],
        vec!["bounds", "--n", "100", "--alpha", "0.5", "--csv", "out.csv"],
        vec!["no-such-command"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn bounds_examples() {
    let (v, code) = json(&["bounds", "--n", "100", "--alpha", "0.5", "--t", "2"]);
    assert_eq!(code, 0);
    let rows = v["results"]["clique_bounds"].as_array().unwrap();
    let holmsen = rows
        .iter()
        .find(|r| r["formula_id"] == "holmsen_beta_squared")
        .unwrap();
    assert!((holmsen["value"].as_f64().unwrap() - 8.5786).abs() < 1e-4);
    assert_eq!(v["results"]["boundary_degenerate"], false);

    let (v, _) = json(&["bounds", "--n", "10000", "--alpha", "0.9", "--t", "3"]);
    let rows = v["results"]["clique_bounds"].as_array().unwrap();
    let alpha_floor = rows.iter().find(|r| r["formula_id"] == "k23_alpha_floor").unwrap();
    assert_eq!(alpha_floor["integer_guarantee"], 60);

    let o = run(&["bounds", "--n", "50", "--alpha", "1.0", "--t", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("boundary-degenerate"));
    let (v, _) = json(&["bounds", "--n", "50", "--alpha", "1.0", "--t", "2"]);
    assert_eq!(v["results"]["boundary_degenerate"], true);
}

#[test]
fn bounds_turan_and_hypothesis() {
    let (v, code) = json(&["bounds", "--n", "100", "--alpha", "0.5", "--t", "2", "--vh", "4", "--ramsey", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["turan_bounds"].as_array().unwrap().len(), 3);
    assert_eq!(v["results"]["subgraph_hypothesis"]["beta_form"], true);
}

#[test]
fn witness_examples() {
    let dir = TempDir::new().unwrap();
    let k4 = write_graph(&dir, "k4.g6", &complete(4));
    let k3 = write_graph(&dir, "k3.g6", &complete(3));
    let cases = [
        (k5_minus_edge(), &k4, "h-embedded"),
        (cycle(4).unwrap(), &k3, "induced-k2t-found"),
        (cycle(5).unwrap(), &k3, "hypothesis-not-met"),
    ];
    for (i, (g, h, tag)) in cases.into_iter().enumerate() {
        let gp = write_graph(&dir, &format!("g{i}.g6"), &g);
        let (v, code) = json(&["witness", "--graph", s(&gp), "--h", s(h), "--t", "2"]);
        assert_eq!(code, 0, "{v}");
        assert_eq!(v["results"]["outcome"], tag);
        assert_eq!(v["results"]["verified"], true);
        if tag == "hypothesis-not-met" {
            assert_eq!(v["results"]["slack"]["hypothesis_holds"], false);
        }
    }
}

#[test]
fn witness_rejects_oversized_pattern() {
    let dir = TempDir::new().unwrap();
    let g = write_graph(&dir, "g.g6", &complete(12));
    let h = write_graph(&dir, "h.g6", &complete(11));
    let o = run(&["witness", "--graph", s(&g), "--h", s(&h)]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_beta_passes() {
    let (v, code) = json(&["verify", "--suite", "beta"]);
    assert_eq!(code, 0);
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
    assert_eq!(v["results"]["passed"], true);
}

#[test]
fn verify_ramsey_small_and_shards() {
    let (v, code) = json(&["verify", "--suite", "ramsey-small"]);
    assert_eq!(code, 0, "{v}");
    let (a, _) = json(&["verify", "--suite", "clique-exhaustive", "--nmax", "5", "--shard", "0/2"]);
    let (b, _) = json(&["verify", "--suite", "clique-exhaustive", "--nmax", "5", "--shard", "1/2"]);
    let (all, _) = json(&["verify", "--suite", "clique-exhaustive", "--nmax", "5"]);
    let total = |v: &Value| -> u64 {
        v["results"]["checked"]
            .as_object()
            .unwrap()
            .values()
            .map(|c| c.as_u64().unwrap())
            .sum()
    };
    assert_eq!(total(&a) + total(&b), total(&all));
}

#[test]
fn generate_polarity_5() {
    let o = run(&["generate", "polarity", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let g = graph6::decode(stdout(&o).trim()).unwrap();
    assert_eq!(g.n(), 31);

    let dir = TempDir::new().unwrap();
    let out = dir.path().join("pg.g6");
    let o = run(&["generate", "polarity", "--q", "5", "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(graph6::decode(text.trim()).unwrap(), g);
}

#[test]
fn generate_gnp_is_seeded() {
    let a = stdout(&run(&["generate", "gnp", "--n", "30", "--p", "0.4", "--seed", "7"]));
    let b = stdout(&run(&["generate", "gnp", "--n", "30", "--p", "0.4", "--seed", "7"]));
    let c = stdout(&run(&["generate", "gnp", "--n", "30", "--p", "0.4", "--seed", "8"]));
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn ramsey_examples() {
    let (v, code) = json(&["ramsey", "--t", "3", "--r", "3", "--cap", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["result"]["exact"], 6);
    assert_eq!(v["results"]["witness_valid"], true);
    let w = graph6::decode(v["results"]["result"]["lower_witness"].as_str().unwrap()).unwrap();
    assert!(detect::is_isomorphic(&w, &cycle(5).unwrap()));

    let dir = TempDir::new().unwrap();
    let k4 = write_graph(&dir, "k4.g6", &complete(4));
    let (v, code) = json(&["ramsey", "--t", "2", "--h", s(&k4)]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["result"]["exact"], 3);
    let family = v["results"]["query"]["family"]["members"].as_array().unwrap();
    assert_eq!(family.len(), 1);
    assert_eq!(graph6::decode(family[0].as_str().unwrap()).unwrap(), complete(3));
}

#[test]
fn sweep_writes_csv() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("sweep.csv");
    let o = run(&["--csv", s(&out), "sweep", "--n", "100,1000", "--alpha", "0.5,0.9", "--t", "2,3"]);
    assert_eq!(o.status.code(), Some(0));
    let mut reader = csv::Reader::from_path(&out).unwrap();
    let headers = reader.headers().unwrap().clone();
    assert!(headers.iter().any(|h| h == "formula_id"));
    let rows = reader.records().count();
    assert!(rows >= 8, "{rows}");

    let o = run(&["sweep", "--n", "100", "--alpha", "0.5"]);
    assert!(stdout(&o).starts_with("n,alpha,t,beta,formula_id"));
}

#[test]
fn json_file_and_text_together() {
    let dir = TempDir::new().unwrap();
    let report = dir.path().join("report.json");
    let o = run(&["--json", s(&report), "bounds", "--n", "100", "--alpha", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("holmsen_beta_squared"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "bounds");
}

#[test]
fn reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let pet = write_graph(&dir, "p.g6", &petersen());
    let k3 = write_graph(&dir, "k3.g6", &complete(3));
    let commands: Vec<Vec<&str>> = vec![
        vec!["detect", "--graph", s(&pet), "--t", "3"],
        vec!["bounds", "--n", "500", "--alpha", "0.7", "--t", "3", "--vh", "5"],
        vec!["witness", "--graph", s(&pet), "--h", s(&k3)],
        vec!["verify", "--suite", "witness-random", "--samples", "30", "--seed", "3"],
        vec!["ramsey", "--t", "3", "--r", "4"],
    ];
    for args in commands {
        let strip = |mut v: Value| {
            v.as_object_mut().unwrap().remove("runtime_ms");
            serde_json::to_string(&v).unwrap()
        };
        let first = strip(json(&args).0);
        let second = strip(json(&args).0);
        assert_eq!(first, second, "{args:?}");
    }
}

#[test]
fn thread_override_is_honoured_and_validated() {
    let o = bin()
        .env("K2TLAB_THREADS", "2")
        .args(["ramsey", "--t", "3", "--r", "3"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let o = bin()
        .env("K2TLAB_THREADS", "lots")
        .args(["ramsey", "--t", "3", "--r", "3"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn thread_count_does_not_change_reports() {
    let report = |threads: &str, args: &[&str]| {
        let o = bin().env("K2TLAB_THREADS", threads).arg("--json").arg("-").args(args).output().unwrap();
        let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
        v.as_object_mut().unwrap().remove("runtime_ms");
        v
    };
    for args in [
        &["ramsey", "--t", "3", "--r", "4"][..],
        &["verify", "--suite", "proof-ineq", "--nmax", "5"][..],
    ] {
        assert_eq!(report("1", args), report("3", args), "{args:?}");
    }
}
