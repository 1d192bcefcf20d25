//! End-to-end runs of the `strans` binary: spawn it exactly as a user
//! would, pin stdout bytes and exit codes.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

fn tmp(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR"));
    fs::create_dir_all(dir).unwrap();
    dir.join(name)
}

fn strans(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_strans"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("no signal"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn write_file(name: &str, content: &str) -> PathBuf {
    let path = tmp(name);
    fs::write(&path, content).unwrap();
    path
}

const P6: &str = "6 5\n0 1\n1 2\n2 3\n3 4\n4 5\n";
const P3: &str = "3 2\n0 1\n1 2\n";
const K32: &str = "5 6\n0 3\n0 4\n1 3\n1 4\n2 3\n2 4\n";
const K4: &str = "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";
const C4: &str = "4 4\n0 1\n1 2\n2 3\n0 3\n";

#[test]
fn solve_dispatches_per_class() {
    let p6 = write_file("solve_p6.graph", P6);
    let (code, out, _) = strans(&["solve", "--input", p6.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out, "Tr_st = 3 (method: tree)\n");

    let k32 = write_file("solve_k32.graph", K32);
    let (code, out, _) = strans(&["solve", "--input", k32.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out, "Tr_st = 2 (method: oracle)\n");

    let k4 = write_file("solve_k4.graph", K4);
    let (code, out, _) = strans(&["solve", "--input", k4.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out, "Tr_st = 4 (method: split)\n");
}

#[test]
fn solve_sat_method_agrees() {
    let c4 = write_file("solve_sat_c4.graph", C4);
    let (code, out, _) =
        strans(&["solve", "--input", c4.to_str().unwrap(), "--method", "sat"]);
    assert_eq!(code, 0);
    assert_eq!(out, "Tr_st = 3 (method: sat)\n");
}

#[test]
fn solve_writes_verified_witnesses() {
    let p6 = write_file("witness_p6.graph", P6);
    let w = tmp("witness_p6.partition");
    let (code, _, _) = strans(&[
        "solve",
        "--input",
        p6.to_str().unwrap(),
        "--witness",
        w.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let (code, out, _) = strans(&[
        "verify",
        "--input",
        p6.to_str().unwrap(),
        "--partition",
        w.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "emitted witness must verify");
    assert_eq!(out, "valid\n");
    let text = fs::read_to_string(&w).unwrap();
    assert_eq!(text.lines().next(), Some("3"), "three classes on P_6");
}

#[test]
fn solve_error_codes() {
    let (code, _, err) = strans(&["solve", "--input", tmp("absent.graph").to_str().unwrap()]);
    assert_eq!(code, 2, "unreadable file: {err}");

    // two disjoint edges: a forest, no solver applies at the CLI boundary
    let forest = write_file("solve_forest.graph", "4 2\n0 1\n2 3\n");
    let (code, _, err) = strans(&["solve", "--input", forest.to_str().unwrap()]);
    assert_eq!(code, 4, "forest: {err}");

    // a 16-vertex cycle is neither tree nor split and too big for the oracle
    let mut big = String::from("16 16\n");
    for v in 0..16 {
        big.push_str(&format!("{v} {}\n", (v + 1) % 16));
    }
    let big = write_file("solve_big.graph", &big);
    let (code, _, err) = strans(&["solve", "--input", big.to_str().unwrap()]);
    assert_eq!(code, 3, "oversized general graph: {err}");
    let (code, _, err) =
        strans(&["solve", "--input", big.to_str().unwrap(), "--method", "oracle"]);
    assert_eq!(code, 3, "oracle refuses 16 vertices: {err}");

    let c4 = write_file("solve_notatree.graph", C4);
    let (code, _, err) = strans(&["solve", "--input", c4.to_str().unwrap(), "--method", "tree"]);
    assert_eq!(code, 4, "C_4 is not a tree: {err}");
    let (code, _, err) = strans(&["solve", "--input", c4.to_str().unwrap(), "--method", "split"]);
    assert_eq!(code, 4, "C_4 is not split: {err}");
}

#[test]
fn verify_reports_the_first_violation() {
    let p3 = write_file("verify_p3.graph", P3);
    let good = write_file("verify_good.partition", "2\n1 2\n0\n");
    let bad = write_file("verify_bad.partition", "2\n0 2\n1\n");

    let (code, out, _) = strans(&[
        "verify",
        "--input",
        p3.to_str().unwrap(),
        "--partition",
        good.to_str().unwrap(),
    ]);
    assert_eq!((code, out.as_str()), (0, "valid\n"));

    let (code, out, _) = strans(&[
        "verify",
        "--input",
        p3.to_str().unwrap(),
        "--partition",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
    assert_eq!(out, "class 1 fails to strongly dominate vertex 1 in class 2\n");

    // the same partition is fine under plain domination
    let (code, out, _) = strans(&[
        "verify",
        "--input",
        p3.to_str().unwrap(),
        "--partition",
        bad.to_str().unwrap(),
        "--mode",
        "plain",
    ]);
    assert_eq!((code, out.as_str()), (0, "valid\n"));
}

#[test]
fn verify_flags_malformed_partitions() {
    let p3 = write_file("verify_m_p3.graph", P3);
    for (name, text) in [
        ("verify_m_range.partition", "2\n0 1\n7\n"),
        ("verify_m_missing.partition", "1\n0 1\n"),
        ("verify_m_dup.partition", "2\n0 1\n1 2\n"),
        ("verify_m_syntax.partition", "not a partition\n"),
    ] {
        let p = write_file(name, text);
        let (code, _, err) = strans(&[
            "verify",
            "--input",
            p3.to_str().unwrap(),
            "--partition",
            p.to_str().unwrap(),
        ]);
        assert_eq!(code, 5, "{name}: {err}");
    }
}

#[test]
fn reduce_emits_instance_files() {
    let k3 = write_file("reduce_k3.col", "p edge 3 3\ne 1 2\ne 1 3\ne 2 3\n");
    let prefix = tmp("reduce_k3_out");
    let (code, out, _) =
        strans(&["reduce", "--input", k3.to_str().unwrap(), "--out", prefix.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out, "k = 7\n");

    let graph_text = fs::read_to_string(tmp("reduce_k3_out.graph")).unwrap();
    assert!(graph_text.starts_with("235 "), "235 vertices: {}", &graph_text[..12]);
    let prov = fs::read_to_string(tmp("reduce_k3_out.provenance")).unwrap();
    assert!(prov.contains("sources 3\n"));
    assert!(prov.contains("k 7\n"));
    assert!(prov.contains("apex 6\n"));

    let p3 = write_file("reduce_p3.col", "p edge 3 2\ne 1 2\ne 2 3\n");
    let prefix = tmp("reduce_p3_out");
    let (code, out, _) =
        strans(&["reduce", "--input", p3.to_str().unwrap(), "--out", prefix.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out, "k = 6\n");
}

#[test]
fn reduce_rejects_disconnected_sources() {
    let split = write_file("reduce_disc.col", "p edge 4 3\ne 1 2\ne 1 3\ne 2 3\n");
    let prefix = tmp("reduce_disc_out");
    let (code, _, err) = strans(&[
        "reduce",
        "--input",
        split.to_str().unwrap(),
        "--out",
        prefix.to_str().unwrap(),
    ]);
    assert_eq!(code, 4, "{err}");
}

#[test]
fn stnumber_prints_the_vertex_table() {
    let p3 = write_file("stnumber_p3.graph", P3);
    let (code, out, _) = strans(&["stnumber", "--input", p3.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out, "0:2 1:1 2:2\n");

    let c4 = write_file("stnumber_c4.graph", C4);
    let (code, _, _) = strans(&["stnumber", "--input", c4.to_str().unwrap()]);
    assert_eq!(code, 4);
}

#[test]
fn gen_is_deterministic_and_exact() {
    let out1 = tmp("gen_k32_a.graph");
    let (code, _, _) = strans(&[
        "gen",
        "--family",
        "complete-bipartite",
        "--a",
        "3",
        "--b",
        "2",
        "--out",
        out1.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(fs::read_to_string(&out1).unwrap(), K32);

    let (c1, text1, _) = strans(&["gen", "--family", "random-tree", "--n", "40", "--seed", "7"]);
    let (c2, text2, _) = strans(&["gen", "--family", "random-tree", "--n", "40", "--seed", "7"]);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(text1, text2, "same seed, same bytes");
    let (_, text3, _) = strans(&["gen", "--family", "random-tree", "--n", "40", "--seed", "8"]);
    assert_ne!(text1, text3, "different seed, different tree");
}

#[test]
fn encode_writes_cnf() {
    let c4 = write_file("encode_c4.graph", C4);
    let out = tmp("encode_c4.cnf");
    let (code, msg, _) = strans(&[
        "encode",
        "--input",
        c4.to_str().unwrap(),
        "-k",
        "3",
        "--out",
        out.to_str().unwrap(),
    ]);
    // 4 vertices x (1 at-least-one + 3 at-most-one) = 16, 3 nonempty-class,
    // and per vertex one clause for each (level, lower class) pair = 12.
    assert_eq!(code, 0);
    assert_eq!(msg, "12 variables, 31 clauses\n");
    let cnf = fs::read_to_string(&out).unwrap();
    assert!(cnf.starts_with("p cnf 12 31\n"), "{}", cnf.lines().next().unwrap());
}

#[test]
fn oracle_reports_both_quantities() {
    let c4 = write_file("oracle_c4.graph", C4);
    let (code, out, _) = strans(&["oracle", "--input", c4.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(out, "Tr_st = 3, Tr = 3\n");

    let (code, out, _) = strans(&["oracle", "--input", c4.to_str().unwrap(), "--vertex", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out, "st(2) = 3\n");

    let (code, _, _) = strans(&["oracle", "--input", c4.to_str().unwrap(), "--vertex", "9"]);
    assert_eq!(code, 4);
}

#[test]
fn dimacs_inputs_parse_everywhere() {
    let p6 = write_file("dimacs_p6.col", "p edge 6 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 6\n");
    let (code, out, _) = strans(&[
        "solve",
        "--input",
        p6.to_str().unwrap(),
        "--format",
        "dimacs",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, "Tr_st = 3 (method: tree)\n");
}

#[test]
fn bench_emits_csv() {
    let (code, out, _) = strans(&[
        "bench",
        "--family",
        "tree",
        "--sizes",
        "200,400",
        "--reps",
        "1",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "size,seconds,vertices_per_second");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("200,"));
    assert!(lines[2].starts_with("400,"));
}
