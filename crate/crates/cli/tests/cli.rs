use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn gapred(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gapred")).args(args).env_remove("GAPRED_BUDGET").output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn value<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines().find_map(|l| l.strip_prefix(key)?.strip_prefix('='))
}

#[test]
fn analyze_and3() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "and3.mc", "inputs x1 x2 x3\ngate g AND x1 x2 x3\noutput g\n");
    let out = gapred(&["analyze", "--circuit", s(&c)]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(value(&text, "depth"), Some("1"));
    assert_eq!(value(&text, "weft"), Some("1"));
    assert_eq!(value(&text, "class"), Some("monotone"));
}

#[test]
fn verify_gap_monotone_and2() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "and2.mc", "inputs x1 x2\ngate g AND x1 x2\noutput g\n");
    let out = gapred(&["verify-gap-monotone", "--circuit", s(&c), "--k", "2", "--rho", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(value(&text, "claim1"), Some("true"));
    assert_eq!(value(&text, "claim2"), Some("true"));
}

#[test]
fn rs_encode_and_recover() {
    let out = gapred(&["rs", "--ell", "2", "--k", "2", "--D", "3", "encode", "1", "1"]);
    assert!(out.status.success());
    assert_eq!(value(&stdout(&out), "codeword"), Some("0 1 1"));
    let out = gapred(&["rs", "--ell", "2", "--k", "2", "--D", "3", "recover", "?", "1", "1"]);
    assert_eq!(value(&stdout(&out), "message"), Some("1 1"));
    let out = gapred(&["rs", "--ell", "2", "--k", "2", "--D", "3", "recover", "?", "?", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn solve_circuit_modes() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "or.mc", "inputs a b c\ngate g OR a b c\noutput g\n");
    let min = stdout(&gapred(&["solve-circuit", "--circuit", s(&c), "--min"]));
    assert_eq!((value(&min, "weight"), value(&min, "assignment")), (Some("1"), Some("a")));
    let max = stdout(&gapred(&["solve-circuit", "--circuit", s(&c), "--max"]));
    assert_eq!(value(&max, "weight"), Some("3"));
    let k0 = stdout(&gapred(&["solve-circuit", "--circuit", s(&c), "--k", "0"]));
    assert_eq!(value(&k0, "satisfiable"), Some("false"));
}

#[test]
fn amplify_then_analyze_within_bounds() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "c.mc", "inputs a b c d\ngate g1 OR a b c\ngate g2 AND g1 d\noutput g2\n");
    let out_path = dir.path().join("amp.mc");
    let out = gapred(&["amplify", "--circuit", s(&c), "--k", "2", "--rho", "k", "--seed", "3", "--out", s(&out_path)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(value(&stdout(&out), "k_prime"), Some("4"));
    let analyzed = stdout(&gapred(&["analyze", "--circuit", s(&out_path)]));
    let depth: usize = value(&analyzed, "depth").unwrap().parse().unwrap();
    let weft: usize = value(&analyzed, "weft").unwrap().parse().unwrap();
    assert!(depth <= 2 + 2 && weft <= 1 + 2);
    assert_eq!(value(&analyzed, "class"), Some("monotone"));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let c = write(&dir, "c.mc", "inputs a b c d e\ngate g1 OR a b c\ngate g2 AND g1 d e\noutput g2\n");
    let g = write(&dir, "g.txt", "vertices 4\nedge 0 1\nedge 1 2\nedge 0 2\n");
    let runs: Vec<[Vec<u8>; 3]> = (0..2)
        .map(|_| {
            [
                gapred(&["amplify", "--circuit", s(&c), "--k", "2", "--rho", "k", "--seed", "7"]).stdout,
                gapred(&["hash-family", "--n", "9", "--kprime", "3", "--seed", "7"]).stdout,
                gapred(&["reduce-clique", "--graph", s(&g), "--k", "2"]).stdout,
            ]
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    assert!(runs[0].iter().all(|o| !o.is_empty()));
}

#[test]
fn threshold_workflow() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", "vertices 3\nedge 0 1\n");
    let inst = dir.path().join("inst.txt");
    let circ = dir.path().join("anti.mc");
    let out = gapred(&["reduce-clique", "--graph", s(&g), "--k", "2", "--rho", "1", "--out", s(&inst), "--emit-circuit", s(&circ)]);
    assert!(out.status.success());
    assert_eq!(value(&stdout(&out), "universe"), Some("32"));
    assert!(fs::read_to_string(&inst).unwrap().starts_with("# reduction k=2 D=2 ell=2 q=4 seed=0"));

    let solved = stdout(&gapred(&["solve-threshold", "--instance", s(&inst)]));
    assert_eq!(value(&solved, "size"), Some("2"));
    let anti = stdout(&gapred(&["analyze", "--circuit", s(&circ)]));
    assert_eq!(value(&anti, "class"), Some("antimonotone"));

    let report = stdout(&gapred(&["verify-gap-threshold", "--graph", s(&g), "--k", "2"]));
    assert_eq!(value(&report, "claim1"), Some("true"));
    assert_eq!(value(&report, "target_opt"), Some("2"));
}

#[test]
fn encodings() {
    let dir = TempDir::new().unwrap();
    let sets = write(&dir, "sets.txt", "universe 4\nset 1 2\nset 2 3\n");
    let c = stdout(&gapred(&["hitting-set-circuit", "--sets", s(&sets)]));
    let cpath = write(&dir, "hs.mc", &c);
    let min = stdout(&gapred(&["solve-circuit", "--circuit", s(&cpath), "--min"]));
    assert_eq!(value(&min, "weight"), Some("1"));

    let g = write(&dir, "cg.txt", "vertices 3\ncolors 3 0 1 2\nedge 0 1\nedge 1 2\nedge 0 2\n");
    let c = stdout(&gapred(&["clique-circuit", "--graph", s(&g)]));
    let cpath = write(&dir, "mc.mc", &c);
    let k3 = stdout(&gapred(&["solve-circuit", "--circuit", s(&cpath), "--k", "3"]));
    assert_eq!(value(&k3, "assignment"), Some("v0,v1,v2"));
}

#[test]
fn hash_family_verify() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("h.txt");
    let out = gapred(&["hash-family", "--n", "8", "--kprime", "2", "--verify", "--out", s(&path)]);
    assert!(out.status.success());
    assert_eq!(value(&stdout(&out), "perfect"), Some("true"));
    assert!(fs::read_to_string(&path).unwrap().starts_with("hashfamily n=8 kprime=2"));
}

#[test]
fn errors_exit_with_one() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.mc", "inputs a\ngate g AND a zz\noutput g\n");
    let out = gapred(&["analyze", "--circuit", s(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("undeclared"));

    assert_eq!(gapred(&["analyze", "--nope"]).status.code(), Some(1));
    assert_eq!(gapred(&["analyze", "--circuit", "/nonexistent/x.mc"]).status.code(), Some(1));
    let c = write(&dir, "c.mc", "inputs a b\ngate g OR a b\noutput g\n");
    assert_eq!(gapred(&["amplify", "--circuit", s(&c), "--k", "1", "--rho", "k^0.5"]).status.code(), Some(1));
    let g = write(&dir, "g.txt", "vertices 3\nedge 0 1\n");
    assert_eq!(gapred(&["verify-gap-threshold", "--graph", s(&g), "--k", "2", "--rho", "k"]).status.code(), Some(1));

    let wide = format!("inputs {}\ngate g AND x0 x1\noutput g\n", (0..30).map(|i| format!("x{i}")).collect::<Vec<_>>().join(" "));
    let wide = write(&dir, "wide.mc", &wide);
    let out = Command::new(env!("CARGO_BIN_EXE_gapred"))
        .args(["solve-circuit", "--circuit", s(&wide), "--k", "15"])
        .env("GAPRED_BUDGET", "1000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}
