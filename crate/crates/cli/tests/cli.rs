use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn corebreak(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_corebreak")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_file(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn generate_er_writes_exact_edge_count_with_provenance() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("er.txt");
    let out = corebreak(&[
        "generate", "--model", "er", "--nodes", "1000", "--avg-degree", "4", "--seed", "7", "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# corebreak"));
    assert!(text.contains("seed=7"));
    let data = text.lines().filter(|l| !l.starts_with('#')).count();
    assert_eq!(data, 2000);
}

#[test]
fn generate_is_reproducible() {
    let a = corebreak(&["generate", "--model", "sf", "--nodes", "300", "--avg-degree", "6", "--seed", "1"]);
    let b = corebreak(&["generate", "--model", "sf", "--nodes", "300", "--avg-degree", "6", "--seed", "1"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_with_one() {
    let zero = corebreak(&["generate", "--model", "er", "--nodes", "10", "--avg-degree", "0"]);
    assert_eq!(zero.status.code(), Some(1));
    assert_eq!(corebreak(&["frobnicate"]).status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let g = write_file(dir.path(), "g.txt", "1 2\n2 3\n");
    assert_eq!(corebreak(&["break", &g, "--method", "nope"]).status.code(), Some(1));
    assert_eq!(corebreak(&["break", &g, "--method", "dc", "--update", "approx"]).status.code(), Some(1));
}

#[test]
fn io_errors_exit_with_two() {
    assert_eq!(corebreak(&["break", "/nonexistent/graph.txt"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = write_file(dir.path(), "bad.txt", "1 2\n3 x\n");
    let out = corebreak(&["break", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn break_on_a_tree_needs_no_deletions() {
    let dir = tempfile::tempdir().unwrap();
    let tree = write_file(dir.path(), "tree.txt", "# tree\n1 2\n2 3\n3 4\n3 5\n5 6\n");
    for method in ["hl", "hl-approx", "dc", "kc", "bc", "cc", "ci", "hda", "pr", "ec"] {
        let out = corebreak(&["break", &tree, "--method", method]);
        assert!(out.status.success(), "{method}");
        let record: Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(record["deleted"], 0, "{method}");
        assert_eq!(record["cover"], record["matching"], "{method}");
        assert_eq!(record["cover"], 3, "{method}");
    }
}

#[test]
fn break_record_satisfies_cover_identity() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    let path = path.to_str().unwrap();
    assert!(corebreak(&["generate", "--model", "er", "--nodes", "300", "--avg-degree", "5", "--output", path])
        .status
        .success());
    for update in ["exact", "approx", "approx-literal"] {
        let out = corebreak(&["break", path, "--method", "hl", "--update", update]);
        let r: Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(r["update"], update);
        let (t, m, c) = (r["deleted"].as_u64().unwrap(), r["matching"].as_u64().unwrap(), r["cover"].as_u64().unwrap());
        assert_eq!(c, t + m);
        assert!(t > 0);
    }
}

#[test]
fn cover_reports_external_labels() {
    let dir = tempfile::tempdir().unwrap();
    // triangle 10-20-30 with pendant 40 on 30
    let g = write_file(dir.path(), "g.txt", "10 20\n20 30\n30 10\n30 40\n");
    let out = corebreak(&["cover", &g]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let cover: Vec<u64> = serde_json::from_value(v["cover"].clone()).unwrap();
    assert_eq!(cover.len(), 2);
    assert!(cover.contains(&30));
    let exact = corebreak(&["cover", &g, "--exact"]);
    let v: Value = serde_json::from_str(&stdout(&exact)).unwrap();
    assert_eq!(v["cover_size"], 2);
}

#[test]
fn exact_cover_timeout_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    let path = path.to_str().unwrap();
    corebreak(&["generate", "--model", "er", "--nodes", "200", "--avg-degree", "6", "--output", path]);
    assert_eq!(corebreak(&["cover", path, "--exact", "--budget-secs", "0"]).status.code(), Some(3));
}

#[test]
fn sweep_one_cell_one_trial_has_one_row_per_method_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, threads: &str| {
        let path = dir.path().join(name);
        let out = corebreak(&[
            "sweep", "--models", "er", "--degrees", "4", "--trials", "1", "--nodes", "200", "--methods",
            "hl,dc,ci", "--seed", "3", "--threads", threads, "--output", path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        std::fs::read_to_string(path).unwrap()
    };
    let a = run("a.csv", "1");
    let trial_rows = a.lines().filter(|l| l.starts_with("trial,")).count();
    let mean_rows = a.lines().filter(|l| l.starts_with("mean,")).count();
    assert_eq!(trial_rows, 3);
    assert_eq!(mean_rows, 3);
    assert!(a.lines().any(|l| l.starts_with("kind,model,n,avg_degree")));
    assert_eq!(a, run("b.csv", "3"));
}

#[test]
fn exact_gap_on_edgeless_graphs_is_zero() {
    let out = corebreak(&["exact-gap", "--nodes", "80", "--degrees", "0", "--trials", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mean = text.lines().find(|l| l.starts_with("mean,")).unwrap();
    assert!(mean.contains(",0.0000,"), "{mean}");
}

#[test]
fn lambda_on_cycle_and_clique() {
    let dir = tempfile::tempdir().unwrap();
    let ring: String = (0..10).map(|i| format!("{} {}\n", i, (i + 1) % 10)).collect();
    let ring = write_file(dir.path(), "c10.txt", &ring);
    let out = corebreak(&["lambda", &ring, "--max-order", "4", "--dense"]);
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).skip(1).collect();
    assert_eq!(rows.len(), 8);
    for row in rows {
        let cols: Vec<&str> = row.split(',').collect();
        assert!((cols[2].parse::<f64>().unwrap() - 1.0).abs() < 1e-12);
        assert!((cols[3].parse::<f64>().unwrap() - 1.0).abs() < 1e-9);
    }
    let k4 = write_file(dir.path(), "k4.txt", "1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n");
    let text = stdout(&corebreak(&["lambda", &k4, "--max-order", "1", "--dense"]));
    let first = text.lines().find(|l| l.starts_with("1,odd")).unwrap();
    let cols: Vec<&str> = first.split(',').collect();
    assert!((cols[2].parse::<f64>().unwrap() - 2.0).abs() < 1e-12);
    assert!((cols[3].parse::<f64>().unwrap() - 2.0).abs() < 1e-9);
}
