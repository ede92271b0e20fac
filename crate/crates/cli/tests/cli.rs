use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use planar_pls::graph::{generate, GraphKind};
use planar_pls::io::{parse_graph, write_graph};
use planar_pls::pls::{parse_certificate_file, prove_planar, write_certificate_file};
use planar_pls::sim::{run_round, Assignment, Origin, PlanarityVerifier};
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_planar-pls"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_kind(dir: &TempDir, name: &str, kind: GraphKind) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, write_graph(&generate(&kind).unwrap(), None, &[])).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn embed_grid_prints_one_rotation_per_node() {
    let dir = TempDir::new().unwrap();
    let g = write_kind(&dir, "grid.txt", GraphKind::Grid { w: 3, h: 3 });
    let o = run(&["embed", s(&g)]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("rot ")).count(), 9);
    let back = parse_graph(&out).unwrap();
    assert!(back.rotation.is_some());
}

#[test]
fn embed_k5_reports_witness() {
    let dir = TempDir::new().unwrap();
    let g = write_kind(&dir, "k5.txt", GraphKind::Complete { k: 5 });
    let o = run(&["embed", s(&g)]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("K5-subdivision"));
}

#[test]
fn malformed_header_is_a_parse_error() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("bad.txt");
    fs::write(&p, "3 three\n1 2\n").unwrap();
    assert_eq!(code(&run(&["embed", s(&p)])), 64);
    assert_eq!(code(&run(&["prove", s(&p)])), 64);
}

#[test]
fn usage_errors_do_not_collide_with_nonplanar() {
    assert_eq!(code(&run(&["no-such-command"])), 64);
    assert_eq!(code(&run(&["attack"])), 64);
}

fn prove_to(dir: &TempDir, graph: &Path, name: &str) -> PathBuf {
    let cert = dir.path().join(name);
    let o = run(&["prove", s(graph), "-o", s(&cert)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    cert
}

#[test]
fn prove_then_verify_wheel_accepts() {
    let dir = TempDir::new().unwrap();
    let g = write_kind(&dir, "wheel.txt", GraphKind::Wheel { n: 8 });
    let cert = prove_to(&dir, &g, "wheel.cert");
    let text = fs::read_to_string(&cert).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("node ") && l.contains("#bits=")).count(), 8);
    let o = run(&["verify", s(&g), s(&cert)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().last().unwrap().starts_with("global accept"));
}

#[test]
fn replayed_grid_certificates_fail_on_wheel() {
    let dir = TempDir::new().unwrap();
    let w = write_kind(&dir, "wheel.txt", GraphKind::Wheel { n: 8 });
    let g = write_kind(&dir, "grid.txt", GraphKind::Grid { w: 3, h: 3 });
    let cert = prove_to(&dir, &g, "grid.cert");
    let c = code(&run(&["verify", s(&w), s(&cert)]));
    assert!(c == 65 || c == 3, "exit {c}");
}

#[test]
fn missing_certificate_is_a_mismatch() {
    let dir = TempDir::new().unwrap();
    let g = write_kind(&dir, "grid.txt", GraphKind::Grid { w: 3, h: 3 });
    let w = write_kind(&dir, "wheel.txt", GraphKind::Wheel { n: 8 });
    let cert = prove_to(&dir, &w, "wheel.cert");
    assert_eq!(code(&run(&["verify", s(&g), s(&cert)])), 65);
}

fn edited(dir: &TempDir, cert: &Path, from: &str, to: &str) -> PathBuf {
    let text = fs::read_to_string(cert).unwrap();
    assert!(text.contains(from), "{from} not in certificate file");
    let p = dir.path().join(format!("edited-{}", to.replace([' ', '='], "_")));
    fs::write(&p, text.replacen(from, to, 1)).unwrap();
    p
}

#[test]
fn single_field_edits_are_rejected() {
    let dir = TempDir::new().unwrap();
    let g = write_kind(&dir, "wheel.txt", GraphKind::Wheel { n: 8 });
    let cert = prove_to(&dir, &g, "wheel.cert");
    for (from, to) in [("dist=0", "dist=1"), ("root=1", "root=2"), ("n=8", "n=9")] {
        let bad = edited(&dir, &cert, from, to);
        let o = run(&["verify", s(&g), s(&bad)]);
        assert_eq!(code(&o), 3, "{from} -> {to}");
        assert!(stdout(&o).contains("global reject"));
    }
}

#[test]
fn truncated_certificate_file_is_a_parse_error() {
    let dir = TempDir::new().unwrap();
    let g = write_kind(&dir, "wheel.txt", GraphKind::Wheel { n: 8 });
    let cert = prove_to(&dir, &g, "wheel.cert");
    let bad = edited(&dir, &cert, "edges=", "edges=x");
    assert_eq!(code(&run(&["verify", s(&g), s(&bad)])), 64);
}

#[test]
fn radius_other_than_one_is_refused() {
    let dir = TempDir::new().unwrap();
    let g = write_kind(&dir, "wheel.txt", GraphKind::Wheel { n: 8 });
    let cert = prove_to(&dir, &g, "wheel.cert");
    assert_eq!(code(&run(&["verify", s(&g), s(&cert), "--radius", "2"])), 64);
}

#[test]
fn attack_on_k33_accepts_nothing() {
    let dir = TempDir::new().unwrap();
    let g = write_kind(&dir, "k33.txt", GraphKind::CompleteBipartite { p: 3, q: 3 });
    let o = run(&["attack", s(&g), "--trials", "1000", "--seed", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().last(), Some("accepted: 0"));
    let o = run(&["attack", s(&g), "--trials", "50", "--format", "csv", "--strategies", "uniform,swap"]);
    let out = stdout(&o);
    assert!(out.contains("strategy,trials,accepted,phase1,phase2,phase3"));
    assert_eq!(out.lines().filter(|l| l.starts_with("uniform,") || l.starts_with("swap,")).count(), 2);
}

#[test]
fn gen_blocks_has_expected_node_count() {
    let o = run(&["gen", "blocks", "--k", "4", "--p", "3", "--shape", "path"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("# generated by planar-pls gen: blocks k=4 p=3"));
    assert_eq!(parse_graph(&out).unwrap().graph.node_count(), 15);
}

#[test]
fn gen_is_deterministic_given_seed() {
    let a = stdout(&run(&["gen", "glued", "--n", "18", "--q", "3", "--seed", "5"]));
    let b = stdout(&run(&["gen", "glued", "--n", "18", "--q", "3", "--seed", "5"]));
    assert_eq!(a, b);
    assert!(a.contains("seed=5"));
    assert!(parse_graph(&a).is_ok());
}

#[test]
fn gen_rejects_bad_parameters() {
    let o = run(&["gen", "blocks", "--k", "2", "--p", "3"]);
    assert_ne!(code(&o), 0);
}

#[test]
fn sweep_csv_has_ratio_column() {
    let o = run(&["sweep", "--kind", "grid", "--sizes", "16,64,256"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let header = out.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, "n,max_bits,ratio");
    assert_eq!(out.lines().filter(|l| l.contains(',') && !l.starts_with('n')).count(), 3);
}

#[test]
fn oracle_check_on_a_corpus_directory() {
    let dir = TempDir::new().unwrap();
    write_kind(&dir, "a.txt", GraphKind::Grid { w: 4, h: 3 });
    write_kind(&dir, "b.txt", GraphKind::RandomMaximalPlanar { n: 30, seed: 2 });
    write_kind(&dir, "c.txt", GraphKind::Petersen);
    let o = bin()
        .args(["oracle-check", "--scope", "transform"])
        .env("PLANAR_PLS_CORPUS", dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("2 instances checked, 1 skipped"));
    assert_eq!(code(&run(&["oracle-check", "--scope", "lowerbound"])), 0);
}

/// Verdict lines printed by `verify` agree with an in-process round on the
/// same certificate file, for honest and tampered files alike.
#[test]
fn verify_round_trip_matches_in_process() {
    let dir = TempDir::new().unwrap();
    let kind = GraphKind::RandomMaximalPlanar { n: 40, seed: 9 };
    let graph = generate(&kind).unwrap();
    let g = write_kind(&dir, "rmp.txt", kind);
    let cert = prove_to(&dir, &g, "rmp.cert");
    let text = fs::read_to_string(&cert).unwrap();
    assert_eq!(text, write_certificate_file(&graph, &prove_planar(&graph, None).unwrap()));
    let tampered = edited(&dir, &cert, " i=", " i=1");
    for file in [cert, tampered] {
        let certs = parse_certificate_file(&fs::read_to_string(&file).unwrap()).unwrap();
        let report = run_round(&graph, &Assignment::from_certificates(&certs, Origin::External), &PlanarityVerifier).unwrap();
        let mut expected: Vec<String> = report.per_node.iter().map(|(v, verdict)| format!("node {v} {verdict}")).collect();
        expected.push(format!(
            "global {} max_bits={} mean_bits={:.1}",
            if report.accepted() { "accept" } else { "reject" },
            report.max_bits,
            report.mean_bits
        ));
        let o = run(&["verify", s(&g), s(&file)]);
        assert_eq!(stdout(&o).lines().collect::<Vec<_>>(), expected);
        assert_eq!(code(&o), if report.accepted() { 0 } else { 3 });
    }
}
