use std::io::Write;
use std::process::{Command, Output, Stdio};

fn realnum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_realnum"))
        .args(args)
        .env_remove("REALNUM_WORKERS")
        .output()
        .expect("binary runs")
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_realnum"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn c2_fixtures_match_goldens() {
    for name in ["k3", "k4minus", "prism3", "k33", "fig2"] {
        let o = realnum(&["c2", "--fixture", name]);
        assert!(o.status.success(), "{name}");
        assert_eq!(stdout(&o), golden(&format!("c2_{name}.txt")), "{name}");
    }
    assert_eq!(golden("c2_prism3.txt").trim(), "12");
    assert_eq!(golden("c2_fig2.txt").trim(), "45");
}

#[test]
fn bounds_k33() {
    let o = realnum(&["bounds", "--fixture", "k33", "--order", "paper", "--output", "json"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), golden("bounds_k33.json"));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["lowerBound"], 7);
    assert_eq!(v["c2"], 8);
}

#[test]
fn bounds_search_certifies() {
    let o = realnum(&["bounds", "--fixture", "prism3", "--search"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("with 16 realisation bases (certified)"), "{text}");
    assert!(text.contains("lower: 8"));
    assert!(text.contains("upper: 13"));
}

#[test]
fn nbc_and_tutte_goldens() {
    let o = realnum(&["nbc", "--fixture", "prism3", "--list", "--broken"]);
    assert_eq!(stdout(&o), golden("nbc_prism3.txt"));
    let o = realnum(&["tutte", "--fixture", "prism3"]);
    assert_eq!(stdout(&o), golden("tutte_prism3.txt"));
}

#[test]
fn oracle_verify_k4_minus() {
    let o = realnum(&["oracle-verify", "--fixture", "k4minus", "--seeds", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "4 == 4 == 4; verified\n");
    let o = realnum(&[
        "oracle-verify",
        "--fixture",
        "prism3",
        "--seeds",
        "1",
        "--epsilon",
        "9",
        "--output",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verified"], true);
    assert_eq!(v["oracle"][0]["count"], 24);
    assert_eq!(v["oracle"][0]["epsilon"], 8);
}

#[test]
fn catalog_golden_and_worker_invariance() {
    let args = ["catalog", "--n", "3-6", "--output", "csv", "--deterministic"];
    let one = Command::new(env!("CARGO_BIN_EXE_realnum"))
        .args(args)
        .env("REALNUM_WORKERS", "1")
        .output()
        .unwrap();
    let four = realnum(&[&args[..], &["--workers", "4"]].concat());
    assert!(one.status.success() && four.status.success());
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(stdout(&one), golden("catalog_3_6.csv"));
    assert!(golden("catalog_3_6.csv").starts_with("graph,n,m,laman,c2,nbc,upper,lower,elapsed_ms,verified\n"));
}

#[test]
fn catalog_with_oracle() {
    let o = realnum(&["catalog", "--n", "5", "--oracle", "--jsonl", "--deterministic"]);
    assert!(o.status.success());
    let rows: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r["verified"] == true));
}

#[test]
fn batch_itemises_failures() {
    let o = with_stdin(&["batch", "--output", "csv", "--deterministic"], "Bw\nC~\nxx\n");
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(
        stdout(&o),
        "graph,n,m,laman,c2,nbc,upper,lower,elapsed_ms,verified\n\
         Bw,3,3,true,1,2,1,1,0,\n\
         C~,4,6,false,,,,,0,\n"
    );
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("graph xx"), "{err}");
}

#[test]
fn edge_list_input_and_orders() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k4m.txt");
    std::fs::write(&path, "# K4 minus an edge\n1 2 a\n2 3 b\n1 4 c\n3 4 d\n1 3 e\n").unwrap();
    let p = path.to_str().unwrap();
    let o = realnum(&["c2", "--input", p]);
    assert_eq!(stdout(&o), "2\n");
    let o = realnum(&["c2", "--input", p, "--order", "e,d,c,b,a"]);
    assert_eq!(stdout(&o), "2\n");
    let o = realnum(&["c2", "--input", p, "--order", "random:7", "--method", "enumerate"]);
    assert_eq!(stdout(&o), "2\n");
    let o = realnum(&["nbc", "--input", p, "--list"]);
    assert_eq!(stdout(&o), "4\nnbc bases: ace ade bce bde\n");
    let o = realnum(&["c2", "--input", p, "--output", "csv", "--deterministic"]);
    assert!(stdout(&o).ends_with(",5,true,2,4,2,2,0,\n"));
}

#[test]
fn graph6_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.g6");
    std::fs::write(&path, "C^\n").unwrap();
    let o = realnum(&["c2", "--input", path.to_str().unwrap()]);
    assert_eq!(stdout(&o), "2\n");
}

#[test]
fn bigraph_identity() {
    let o = realnum(&["bigraph", "--fixture", "prism3"]);
    assert_eq!(stdout(&o), "24\n");
    let o = realnum(&[
        "bigraph",
        "--fixture",
        "k4minus",
        "--h-fixture",
        "k4minus",
        "--bijection",
        "1,2,3,4,5",
    ]);
    assert_eq!(stdout(&o), "4\n");
}

#[test]
fn laman_and_witnesses() {
    assert_eq!(stdout(&realnum(&["laman", "--fixture", "k33"])), "true\n");
    let o = realnum(&["c2", "--fixture", "k4minus", "--witnesses"]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 5);
    assert!(text.starts_with("2\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(realnum(&["c2", "--fixture", "nope"]).status.code(), Some(1));
    assert_eq!(realnum(&["c2"]).status.code(), Some(1));
    assert_eq!(realnum(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        realnum(&["c2", "--fixture", "k3", "--order", "1,2"]).status.code(),
        Some(1)
    );
    assert_eq!(realnum(&["--help"]).status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let c4 = dir.path().join("c4.txt");
    std::fs::write(&c4, "1 2\n2 3\n3 4\n4 1\n").unwrap();
    let o = realnum(&["c2", "--input", c4.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("not minimally 2-rigid"));
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "1 x\n").unwrap();
    assert_eq!(
        realnum(&["c2", "--input", bad.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn timeout_is_a_failure() {
    let o = realnum(&["c2", "--fixture", "fig2", "--method", "enumerate", "--timeout", "0.01"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("time budget"));
}
