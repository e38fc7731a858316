use std::path::PathBuf;

use digipi::cli_io::{parse_image, run};

fn scratch(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("digipi-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path: PathBuf = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

fn cli(args: &[&str]) -> (i32, String) {
    run(std::iter::once("digipi").chain(args.iter().copied()))
}

#[test]
fn analyze_projective_plane() {
    let (code, rp2) = cli(&["construct", "rp2"]);
    assert_eq!(code, 0);
    let path = scratch("rp2.dimg", &rp2);
    let (code, report) = cli(&["analyze", &path]);
    assert_eq!(code, 0, "{report}");
    assert!(report.contains("H1 = Z/2\n"), "{report}");
    assert!(report.contains("order = 2\n"), "{report}");
    assert!(report.contains("simplified_generators = 1\n"), "{report}");
}

#[test]
fn analyze_diamond() {
    let (_, d) = cli(&["construct", "diamond"]);
    let path = scratch("diamond.dimg", &d);
    let (code, report) = cli(&["analyze", &path]);
    assert_eq!(code, 0);
    assert!(report.contains("H1 = Z^1\n"));
    assert!(report.contains("order = infinite\n"));
}

#[test]
fn constructions_reparse_and_verify() {
    let cases: [&[&str]; 6] = [
        &["diamond"],
        &["circle", "6"],
        &["circle", "9"],
        &["double-diamond"],
        &["rp2"],
        &["interval", "5"],
    ];
    for case in cases {
        let mut args = vec!["construct"];
        args.extend_from_slice(case);
        args.push("--verify");
        let (code, out) = cli(&args);
        assert_eq!(code, 0, "{case:?}: {out}");
        assert!(!out.contains("FAIL"), "{out}");
        assert!(out.contains("# verify: PASS"), "{out}");
        parse_image(&out).unwrap();
    }
}

#[test]
fn deterministic_output() {
    let (_, a) = cli(&["construct", "rp2", "--verify"]);
    let (_, b) = cli(&["construct", "rp2", "--verify"]);
    assert_eq!(a, b);
}

#[test]
fn svk_refuses_without_hypothesis() {
    let u = scratch("svk_u.dimg", "2\n0\n1 0\n0 1\n");
    let v = scratch("svk_v.dimg", "2\n0\n1 0\n0 -1\n-1 0\n");
    let (code, msg) = cli(&["svk", &u, &v]);
    assert_eq!(code, 1);
    assert!(msg.contains("complements not disconnected"), "{msg}");
}

#[test]
fn svk_double_diamond() {
    let u = scratch("dd_u.dimg", "2\n0\n0 0\n1 1\n2 0\n1 -1\n");
    let v = scratch("dd_v.dimg", "2\n0\n0 0\n-1 1\n-2 0\n-1 -1\n");
    let (code, report) = cli(&["svk", &u, &v]);
    assert_eq!(code, 0, "{report}");
    assert!(report.contains("H1 = Z^2\n"), "{report}");
    assert!(report.contains("consistent = true\n"), "{report}");
}

#[test]
fn realize_and_embed() {
    let pres = scratch("z2.pres", "gens 1\ng1 g1\n");
    let (code, out) = cli(&["realize", &pres, "--verify"]);
    assert_eq!(code, 0, "{out}");
    assert!(!out.contains("FAIL"), "{out}");
    let img = scratch("z2.dimg", &out);
    let (code, report) = cli(&["analyze", &img]);
    assert_eq!(code, 0);
    assert!(report.contains("H1 = Z/2\n"), "{report}");

    let graph = scratch("c5.graph", "vertices 5\n0 1\n1 2\n2 3\n3 4\n4 0\n");
    let (code, out) = cli(&["embed-graph", &graph]);
    assert_eq!(code, 0, "{out}");
    let x = parse_image(&out).unwrap();
    assert_eq!(x.len(), 5);
    assert_eq!(x.dimension(), 4);
}

#[test]
fn rank2d_explain() {
    let (_, dd) = cli(&["construct", "double-diamond"]);
    let path = scratch("dd.dimg", &dd);
    let (code, out) = cli(&["rank2d", &path, "--explain"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("rank = 2\n"), "{out}");
    assert!(out.lines().count() > 1);
}

#[test]
fn verify_and_dot() {
    let (_, d) = cli(&["construct", "diamond"]);
    let path = scratch("verify.dimg", &d);
    let (code, out) = cli(&["verify", &path, "--seed", "3"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("status = ok"));
    let (code, dot) = cli(&["export-dot", &path]);
    assert_eq!(code, 0);
    assert!(dot.starts_with("graph"), "{dot}");
}

#[test]
fn exit_codes() {
    assert_eq!(cli(&["bogus"]).0, 2);
    assert_eq!(cli(&["analyze", "/nonexistent/x.dimg"]).0, 2);
    let dup = scratch("dup.dimg", "2\n0\n0 0\n0 0\n");
    let (code, msg) = cli(&["analyze", &dup]);
    assert_eq!(code, 2);
    assert!(msg.contains("line 4"), "{msg}");
    let split = scratch("split.dimg", "2\n0\n0 0\n5 5\n");
    assert_eq!(cli(&["analyze", &split]).0, 1);
    let bad = scratch("bad.pres", "gens 1\ng2\n");
    assert_eq!(cli(&["realize", &bad]).0, 2);
    assert_eq!(cli(&["construct", "circle"]).0, 1);
}
