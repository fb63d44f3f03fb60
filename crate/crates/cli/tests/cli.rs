use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn mkg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mkg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mkg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

const C5: &str = "# five-cycle\n5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n";

#[test]
fn schrijver_report() {
    let out = mkg(&["schrijver", "--n", "5", "--r", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["results"]["chi"], 3);
    assert_eq!(v["results"]["chi_matches_formula"], true);
    let bad = mkg(&["schrijver", "--n", "4", "--r", "2"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn permutation_report() {
    let v = json(&mkg(&["permutation", "--m", "4", "--n", "3", "--r", "2"]));
    assert_eq!(v["results"]["chi"], 8);
    assert_eq!(v["results"]["matching_graph_vertices"], 36);
    assert_eq!(v["results"]["euler_lower_bound"], 8);
    assert_eq!(v["results"]["even_m_case"], true);
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("timing_ms");
        v
    };
    let a = strip(json(&mkg(&["schrijver", "--n", "7", "--r", "2"])));
    let b = strip(json(&mkg(&["schrijver", "--n", "7", "--r", "2"])));
    assert_eq!(a, b);
}

#[test]
fn analyze_file_with_orderings() {
    let g = scratch("c5.txt", C5);
    let v = json(&mkg(&["analyze", g.to_str().unwrap(), "--r", "2"]));
    assert_eq!(v["results"]["chromatic"]["chi"], 3);
    assert_eq!(v["results"]["turan"]["ex_value"], 2);
    let ord = scratch("c5.ord", "4 3 2 1 0\n");
    let spec = format!("file:{}", ord.display());
    let v = json(&mkg(&[
        "analyze",
        g.to_str().unwrap(),
        "--r",
        "2",
        "--ordering",
        &spec,
    ]));
    assert_eq!(v["results"]["alternation"]["ordering_source"], "file");
    assert_eq!(
        v["results"]["alternation"]["ordering"]["perm"],
        serde_json::json!([4, 3, 2, 1, 0])
    );
    let table = mkg(&[
        "analyze",
        g.to_str().unwrap(),
        "--r",
        "2",
        "--format",
        "table",
    ]);
    assert!(String::from_utf8_lossy(&table.stdout).contains("chromatic.chi"));
    let bad = mkg(&[
        "analyze",
        g.to_str().unwrap(),
        "--r",
        "2",
        "--ordering",
        "zigzag",
    ]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn parse_error_names_the_line() {
    let g = scratch("bad.txt", "3 2\n0 1\n3 x\n");
    let out = mkg(&["analyze", g.to_str().unwrap(), "--r", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn scan_writes_records() {
    let dir = std::env::temp_dir().join(format!("mkg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out_path = dir.join("scan.jsonl");
    let out = mkg(&[
        "scan",
        "--max-n",
        "4",
        "--r",
        "2",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&out_path).unwrap();
    let recs: Vec<Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(recs.len(), 10);
    assert!(recs
        .iter()
        .all(|r| r["status"] == "certified" && r["equality"] == true));
    let v = json(&out);
    assert_eq!(v["results"]["summary"]["violations"], 0);
}

#[test]
fn scan_disconnected_flags_known_cases() {
    let out = mkg(&[
        "scan",
        "--max-n",
        "10",
        "--r",
        "2",
        "--disconnected",
        "--max-component",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["results"]["summary"]["known_exceptions"], 3);
}

#[test]
fn budget_exhaustion_gives_exit_code_2() {
    // Petersen graph, r = 3, with a one-node budget: ex stays an interval
    let petersen =
        "10 15\n0 1\n1 2\n2 3\n3 4\n0 4\n0 5\n1 6\n2 7\n3 8\n4 9\n5 7\n7 9\n6 9\n6 8\n5 8\n";
    let g = scratch("petersen.txt", petersen);
    let out = mkg(&[
        "analyze",
        g.to_str().unwrap(),
        "--r",
        "3",
        "--max-nodes",
        "1",
    ]);
    assert_eq!(
        out.status.code(),
        Some(2),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(json(&out)["claims"][1]["exactness"], "interval");
}

#[test]
fn dimacs_export() {
    let g = scratch("c5d.txt", C5);
    let out = mkg(&["dimacs", g.to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("p edge 5 5"));
    let out = mkg(&["dimacs", g.to_str().unwrap(), "--r", "2"]);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("p edge 5 5"));
}
