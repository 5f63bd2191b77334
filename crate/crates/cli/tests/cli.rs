use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use critsets::enumerate::canonical_form;
use critsets::io::parse_edge_list;
use critsets::GraphKind;
use serde_json::Value;
use tempfile::TempDir;

fn critsets(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_critsets"))
        .args(args)
        .env_remove("CRITSETS_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const P3: &str = "3 2\n0 1\n1 2\n";
const C5: &str = "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n";
const STAR5: &str = "6 5\n0 5\n1 5\n2 5\n3 5\n4 5\n";

#[test]
fn analyze_p3_json() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p3.el", P3);
    let o = critsets(&["analyze", s(&p), "--json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["critical_difference"], 1);
    assert_eq!(v["families"]["crit_indep"], serde_json::json!([[0, 2]]));
    assert_eq!(v["families"]["crowns"].as_array().unwrap().len(), 4);
}

#[test]
fn analyze_c5_and_k1() {
    let dir = TempDir::new().unwrap();
    let c5 = write(&dir, "c5.el", C5);
    let v: Value = serde_json::from_str(&stdout(&critsets(&["analyze", s(&c5), "--json"]))).unwrap();
    assert_eq!(v["critical_difference"], 0);
    assert_eq!(v["families"]["crowns"], serde_json::json!([[]]));
    assert_eq!(v["graph"]["konig_egervary"], false);

    let k1 = write(&dir, "k1.el", "1 0\n");
    let v: Value = serde_json::from_str(&stdout(&critsets(&["analyze", s(&k1), "--json"]))).unwrap();
    assert!(v["families"]["psi"].as_array().unwrap().contains(&serde_json::json!([])));
    assert!(!v["families"]["crit_indep"].as_array().unwrap().contains(&serde_json::json!([])));
}

#[test]
fn analyze_is_deterministic_and_audits() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.el", "7 8\n0 1\n1 2\n2 3\n3 0\n3 4\n4 5\n5 6\n2 6\n");
    let a = critsets(&["analyze", s(&g), "--json", "--audit"]);
    let b = critsets(&["analyze", s(&g), "--json"]);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8_lossy(&a.stderr).contains("re-validated"));

    let report = write(&dir, "report.json", &stdout(&b));
    assert!(critsets(&["audit", s(&g), s(&report)]).status.success());
    let mut v: Value = serde_json::from_str(&stdout(&b)).unwrap();
    v["families"]["psi"].as_array_mut().unwrap().push(serde_json::json!([0, 1]));
    let tampered = write(&dir, "tampered.json", &v.to_string());
    assert_eq!(critsets(&["audit", s(&g), s(&tampered)]).status.code(), Some(1));
}

#[test]
fn analyze_dimacs_and_text() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "p3.col", "c path\np edge 3 2\ne 1 2\ne 2 3\n");
    let o = critsets(&["analyze", s(&g), "--format", "dimacs"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("d=1 alpha=2 mu=1"));
    assert!(text.contains("CritIndep (1)={{0,2}}"));
}

#[test]
fn large_graph_marks_skipped_fields() {
    let dir = TempDir::new().unwrap();
    let n = 30;
    let mut text = format!("{n} {n}\n");
    for i in 0..n {
        text.push_str(&format!("{i} {}\n", (i + 1) % n));
    }
    let g = write(&dir, "c30.el", &text);
    let o = critsets(&["analyze", s(&g), "--json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["families"], "skipped(limit)");
    assert_eq!(v["alpha"], 15);
}

#[test]
fn parse_errors_exit_2_with_line() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "bad.el", "3 2\n0 1\n1 z\n");
    let o = critsets(&["analyze", s(&g)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    assert_eq!(critsets(&["analyze", "/nonexistent/graph.el"]).status.code(), Some(2));
}

#[test]
fn verify_exhaustive_7_counts() {
    let o = critsets(&["verify", "--exhaustive", "7", "--json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let seven = &v["orders"][6];
    assert_eq!(seven["graphs"], 1044);
    assert_eq!(seven["connected"], 853);
    assert_eq!(v["graphs"], 1252);
    assert!(v.get("first_failure").is_none());
    for (_, counts) in v["checks"].as_array().unwrap().iter().map(|p| (&p[0], &p[1])) {
        assert_eq!(counts["failed"], 0);
    }
}

#[test]
fn verify_random_and_trees() {
    let o = critsets(&["verify", "--random", "200", "--max-n", "12", "--seed", "42", "--json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["config"]["seed"], 42);
    assert_eq!(v["graphs"], 200);

    let o = critsets(&["verify", "--tree", "9", "--json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let greedoid = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|p| p[0] == "tree_greedoids")
        .unwrap();
    assert_eq!(greedoid[1]["passed"], v["graphs"]);

    let o = critsets(&["verify", "--bipartite", "6"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("result: pass"));
}

#[test]
fn verify_rejects_bad_corpora() {
    assert_eq!(critsets(&["verify", "--exhaustive", "11"]).status.code(), Some(3));
    assert_eq!(critsets(&["verify", "--exhaustive", "5", "--tree", "5"]).status.code(), Some(2));
    assert_eq!(critsets(&["verify"]).status.code(), Some(2));
}

#[test]
fn verify_is_thread_independent() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_critsets"))
            .args(["verify", "--random", "60", "--max-n", "10", "--seed", "3", "--json"])
            .env("CRITSETS_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("1"), run("3"));
}

#[test]
fn kernelize_examples() {
    let dir = TempDir::new().unwrap();
    let star = write(&dir, "star.el", STAR5);
    let o = critsets(&["kernelize", s(&star), "--k", "1"]);
    assert!(o.status.success());
    assert_eq!(fs::read_to_string(dir.path().join("star.el.kernel")).unwrap().trim(), "0 0");
    let trace: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("star.el.trace.json")).unwrap()).unwrap();
    assert_eq!(trace["identity"]["holds"], true);
    assert_eq!(trace["steps"][0]["crown"], serde_json::json!([0, 1, 2, 3, 4]));

    let c5 = write(&dir, "c5.el", C5);
    let kernel = dir.path().join("out.el");
    let tr = dir.path().join("out.json");
    let o = critsets(&["kernelize", s(&c5), "--k", "2", "--kernel", s(&kernel), "--trace", s(&tr)]);
    assert!(o.status.success());
    let kernel_graph = parse_edge_list(&fs::read_to_string(&kernel).unwrap()).unwrap();
    assert_eq!(kernel_graph, parse_edge_list(C5).unwrap());
    let trace: Value = serde_json::from_str(&fs::read_to_string(&tr).unwrap()).unwrap();
    assert_eq!(trace["budget"], 2);
    assert_eq!(trace["steps"], serde_json::json!([]));

    let p3 = write(&dir, "p3.el", P3);
    let o = critsets(&["kernelize", s(&p3), "--k", "0"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("infeasible"));
    let trace: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("p3.el.trace.json")).unwrap()).unwrap();
    assert_eq!(trace["status"], "infeasible");
}

#[test]
fn scan_lists() {
    let o = critsets(&["scan", "--max-n", "6", "--json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let listed = v["crit_eq_crown"].as_array().unwrap();
    assert!(listed.iter().all(|e| e["critical_difference"] == 0));
    let canonical = |k: GraphKind| {
        let g = canonical_form(&k.generate().unwrap()).unwrap();
        serde_json::json!({"n": g.n(), "edges": g.edges().collect::<Vec<_>>()})
    };
    let graphs: Vec<&Value> = listed.iter().map(|e| &e["graph"]).collect();
    assert!(graphs.contains(&&canonical(GraphKind::Cycle(4))));
    assert!(graphs.contains(&&canonical(GraphKind::Cycle(6))));
    assert!(!graphs.contains(&&canonical(GraphKind::Path(3))));
    assert_eq!(v["failures"], serde_json::json!([]));

    let o = critsets(&["scan", "--max-n", "8", "--triangle-free"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("theorem failures: 0"));
    assert_eq!(critsets(&["scan", "--max-n", "11"]).status.code(), Some(3));
}
