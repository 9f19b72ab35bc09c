//! Drives the real binary end to end: the documented invocations, file
//! round trips through every format, exit codes, and byte determinism.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

fn run(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_planar-at"))
        .args(args)
        .output()
        .unwrap();
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap(),
    )
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn extract_with_verification_passes_on_k4() {
    let (stdout, _, code) = run(&["extract", "--catalog", "k4", "--verify"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("eta-final v1=1,v3=2,v4=3"), "{stdout}");
    assert!(stdout.contains("matching -"), "{stdout}");
    assert!(stdout.ends_with("verification: pass\n"), "{stdout}");
}

#[test]
fn coefficient_of_the_all_ones_square_monomial() {
    let (stdout, _, code) = run(&[
        "coeff",
        "--catalog",
        "c4",
        "--eta",
        "v1=1,v2=1,v3=1,v4=1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "-2\n");
}

#[test]
fn exact_bound_of_the_five_cycle() {
    let (stdout, _, code) = run(&["at", "--catalog", "c5"]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("at 3\n"), "{stdout}");
}

#[test]
fn files_round_trip_through_every_command() {
    let graph = tmp("rt.graph");
    let cert = tmp("rt.cert");
    let (stdout, _, code) = run(&[
        "gen",
        "--gen",
        "apollonian:8:11",
        "--out",
        path(&graph),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());

    let (stdout, _, code) = run(&["extract", "--graph", path(&graph), "--out", path(&cert)]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty(), "--out must keep stdout quiet: {stdout}");

    let (stdout, _, code) = run(&["verify", "--graph", path(&graph), "--cert", path(&cert)]);
    assert_eq!(code, 0);
    assert!(stdout.ends_with("verification: pass\n"), "{stdout}");

    let (stdout, _, code) = run(&["dot", "--graph", path(&graph), "--cert", path(&cert)]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("graph {"), "{stdout}");
    assert!(stdout.contains("[style=dashed]"), "{stdout}");
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        vec!["extract", "--catalog", "octahedron", "--oriented"],
        vec!["gen", "--gen", "apollonian:9:5"],
        vec!["extract", "--catalog", "w6", "--signed", "--seed", "7"],
        vec!["paint", "--catalog", "c4", "--tokens", "2"],
    ] {
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first, second, "{args:?}");
    }
}

#[test]
fn explicit_plus_signs_do_not_change_the_output() {
    let graph = tmp("plus.graph");
    let (text, _, code) = run(&["gen", "--catalog", "w5"]);
    assert_eq!(code, 0);
    fs::write(&graph, format!("{text}sign v1 v2 +1\n")).unwrap();
    let from_file = run(&["extract", "--graph", path(&graph)]);
    let from_catalog = run(&["extract", "--catalog", "w5"]);
    assert_eq!(from_file, from_catalog);
}

#[test]
fn tampered_certificates_are_rejected() {
    let cert = tmp("tampered.cert");
    let bad = tmp("tampered-bad.cert");
    run(&["extract", "--catalog", "k4", "--out", path(&cert)]);
    let text = fs::read_to_string(&cert).unwrap();
    fs::write(&bad, text.replace("coefficient 1", "coefficient 3")).unwrap();
    let (stdout, _, code) = run(&["verify", "--catalog", "k4", "--cert", path(&bad)]);
    assert_eq!(code, 1);
    assert!(stdout.ends_with("verification: FAIL\n"), "{stdout}");

    let (_, stderr, code) = run(&["verify", "--catalog", "c4", "--cert", path(&cert)]);
    assert_eq!(code, 1, "digest of another graph must not verify");
    assert!(stderr.contains("digest"), "{stderr}");
}

#[test]
fn signature_seeds_bind_certificates_to_their_signature() {
    let cert = tmp("signed.cert");
    let (_, _, code) = run(&[
        "extract", "--catalog", "w6", "--signed", "--seed", "7", "--out", path(&cert),
    ]);
    assert_eq!(code, 0);
    let (stdout, _, code) = run(&[
        "verify", "--catalog", "w6", "--signed", "--seed", "7", "--cert", path(&cert),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.ends_with("verification: pass\n"), "{stdout}");
    let (_, stderr, code) = run(&[
        "verify", "--catalog", "w6", "--signed", "--seed", "8", "--cert", path(&cert),
    ]);
    assert_eq!(code, 1);
    assert!(stderr.contains("digest"), "{stderr}");
}

#[test]
fn oriented_certificates_round_trip_through_files() {
    let cert = tmp("oriented.cert");
    let (_, _, code) = run(&[
        "extract", "--catalog", "apollonian-2", "--oriented", "--out", path(&cert),
    ]);
    assert_eq!(code, 0);
    assert!(fs::read_to_string(&cert).unwrap().contains("mode oriented"));
    let (stdout, _, code) = run(&["verify", "--catalog", "apollonian-2", "--cert", path(&cert)]);
    assert_eq!(code, 0);
    assert!(stdout.contains("check head-count: pass"), "{stdout}");
}

#[test]
fn game_and_coloring_commands_report_results() {
    let (stdout, _, code) = run(&["paint", "--catalog", "c3", "--tokens", "2"]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("winner lister\n"), "{stdout}");

    let (uniform, _, _) = run(&["paint", "--catalog", "c3", "--tokens", "2"]);
    let (spelled, _, _) = run(&["paint", "--catalog", "c3", "--tokens", "v1=2,v2=2,v3=2"]);
    assert_eq!(uniform, spelled);

    let lists = tmp("c3.lists");
    fs::write(&lists, "v1: 1 2\nv2: 1 2\nv3: 1 2\n").unwrap();
    let (stdout, _, code) = run(&["color", "--catalog", "c3", "--lists", path(&lists)]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "no coloring\n");
    let (stdout, _, code) = run(&[
        "color", "--catalog", "c3", "--lists", path(&lists), "--defect", "1",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("coloring "), "{stdout}");
}

#[test]
fn usage_errors_exit_with_two() {
    let missing = tmp("missing.file");
    let cases: Vec<Vec<&str>> = vec![
        vec!["extract", "--catalog", "nope"],
        vec!["extract"],
        vec!["extract", "--catalog", "k4", "--gen", "apollonian:5:1"],
        vec!["extract", "--catalog", "k4", "--edge", "v1"],
        vec!["extract", "--catalog", "k4", "--edge", "v1,v9"],
        vec!["extract", "--gen", "apollonian:zero:1"],
        vec!["coeff", "--catalog", "c4", "--eta", "v1-1"],
        vec!["paint", "--catalog", "icosahedron", "--tokens", "4"],
        vec!["color", "--catalog", "c3", "--lists", path(&missing)],
        vec!["extract", "--gen", "apollonian:70:1"],
    ];
    for args in cases {
        let (_, stderr, code) = run(&args);
        assert_eq!(code, 2, "{args:?}: {stderr}");
        assert!(stderr.contains("error"), "{args:?}: {stderr}");
    }
}

#[test]
fn guards_can_be_raised_explicitly() {
    let (stdout, _, code) = run(&[
        "extract",
        "--gen",
        "apollonian:70:1",
        "--max-vertices",
        "70",
        "--max-edges",
        "204",
        "--verify",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.ends_with("verification: pass\n"), "{stdout}");
}

#[test]
fn closing_the_output_pipe_is_not_a_crash() {
    use std::io::Read;
    use std::process::Stdio;

    let mut child = Command::new(env!("CARGO_BIN_EXE_planar-at"))
        .args([
            "gen",
            "--gen",
            "apollonian:2000:1",
            "--max-vertices",
            "2000",
            "--max-edges",
            "6000",
        ])
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut head = [0u8; 16];
    child.stdout.take().unwrap().read_exact(&mut head).unwrap();
    let status = child.wait().unwrap();
    let mut stderr = String::new();
    child
        .stderr
        .take()
        .unwrap()
        .read_to_string(&mut stderr)
        .unwrap();
    assert!(!stderr.contains("panic"), "{stderr}");
    assert_eq!(status.code(), Some(141), "{stderr}");
}
