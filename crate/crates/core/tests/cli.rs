use std::path::Path;
use std::process::{Command, Output};

use modrep_core::algebra::FDAlgebra;
use modrep_core::bimodule::Bimodule;
use modrep_core::complex::BimoduleComplex;
use modrep_core::io::{write_algebra, write_complex};
use modrep_core::linalg::{Fq, Mat};
use modrep_core::perm::builtin;

fn modrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modrep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn blocks_census_s3() {
    let out = modrep(&["blocks", "S3", "-p", "2"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("blocks: 2"), "{text}");
    assert!(text.contains("block 0: dim 2 principal"), "{text}");
    assert!(text.contains("block 1: dim 4"), "{text}");

    let out = modrep(&["blocks", "S3", "-p", "3"]);
    let text = stdout_of(&out);
    assert!(text.contains("blocks: 1"), "{text}");
    assert!(text.contains("dim 6"), "{text}");

    let out = modrep(&["blocks", "A4", "-p", "2"]);
    let text = stdout_of(&out);
    assert!(text.contains("blocks: 1"), "{text}");
}

#[test]
fn srank_q8() {
    let out = modrep(&["srank", "Q8", "-p", "2"]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("sectional rank: 2"));
}

#[test]
fn bad_input_exits_2() {
    let out = modrep(&["blocks", "NoSuchGroupOrFile", "-p", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = modrep(&["blocks", "S3", "-p", "15"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn findim_c2_attains_two() {
    let out = modrep(&[
        "findim", "--yoshida", "--group", "C2", "-p", "2", "--expect", "2",
        "--dim-cutoff", "10", "--syzygy-cutoff", "8",
    ]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("max finite pdim: 2"), "{text}");
    assert!(text.contains("lower-bound-attained"), "{text}");
}

fn write_shift_fixture(dir: &Path) -> (String, String) {
    let f = Fq::prime(2).unwrap();
    let a = FDAlgebra::group_algebra(&f, &builtin("C2").unwrap());
    let alg_path = dir.join("kc2.json");
    write_algebra(&alg_path, &a).unwrap();
    let x = BimoduleComplex::concentrated(&Bimodule::regular(&a), 0).shift(1);
    let cx_path = dir.join("shift.json");
    write_complex(&cx_path, &x).unwrap();
    (
        alg_path.to_str().unwrap().to_owned(),
        cx_path.to_str().unwrap().to_owned(),
    )
}

#[test]
fn rickard_verify_shift_via_files() {
    let dir = tempfile::tempdir().unwrap();
    let (alg, cx) = write_shift_fixture(dir.path());
    let out = modrep(&["rickard-verify", "--complex", &cx, "--left", &alg, "--right", &alg]);
    let text = stdout_of(&out);
    assert!(out.status.success(), "{text}");
    assert!(text.contains("verdict: pass"), "{text}");

    // splendid check against the same group
    let out = modrep(&[
        "rickard-verify", "--complex", &cx, "--left", &alg, "--right", &alg,
        "--splendid", "-P", "C2", "--left-group", "C2", "--right-group", "C2",
    ]);
    let text = stdout_of(&out);
    assert!(out.status.success(), "{text}");
    assert!(text.contains("splendid: true"), "{text}");
}

#[test]
fn transport_shift_via_files() {
    let dir = tempfile::tempdir().unwrap();
    let (_, cx) = write_shift_fixture(dir.path());
    let out = modrep(&[
        "transport", "--complex", &cx, "--left-group", "C2", "--right-group", "C2", "-p", "2",
    ]);
    let text = stdout_of(&out);
    assert!(out.status.success(), "{text}");
    assert!(text.contains("Y (x) Y' ~ E: true"), "{text}");
}

#[test]
fn stable_eq_identity_via_files() {
    let dir = tempfile::tempdir().unwrap();
    let f = Fq::prime(2).unwrap();
    let a = FDAlgebra::group_algebra(&f, &builtin("C2").unwrap());
    let m = BimoduleComplex::concentrated(&Bimodule::regular(&a), 0);
    let path = dir.path().join("m.json");
    write_complex(&path, &m).unwrap();
    let out = modrep(&[
        "stable-eq", "--bimodule", path.to_str().unwrap(),
        "--left-group", "C2", "--right-group", "C2", "-p", "2",
    ]);
    let text = stdout_of(&out);
    assert!(out.status.success(), "{text}");
    assert!(text.contains("nonprojective summand bijection: true"), "{text}");
}

#[test]
fn cochain_complex_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let (alg, cx) = write_shift_fixture(dir.path());
    let text = std::fs::read_to_string(&cx).unwrap();
    let swapped = text.replace("\"convention\":\"chain\"", "\"convention\":\"cochain\"");
    assert_ne!(text, swapped);
    let cx2 = dir.path().join("cochain.json");
    std::fs::write(&cx2, swapped).unwrap();
    let out = modrep(&[
        "rickard-verify", "--complex", cx2.to_str().unwrap(), "--left", &alg, "--right", &alg,
    ]);
    let text = stdout_of(&out);
    assert!(out.status.success(), "{text}");
    assert!(text.contains("reindexed"), "{text}");
}

#[test]
fn cache_replays_identical_reports() {
    let ws = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_modrep"))
            .args(["blocks", "S3", "-p", "2", "--workspace", ws.path().to_str().unwrap()])
            .output()
            .expect("binary runs")
    };
    let first = run();
    assert!(first.status.success());
    // the cache file exists now; the second run must replay byte-identically
    let second = run();
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.status.code(), second.status.code());
    assert!(ws.path().join("cache").read_dir().unwrap().next().is_some());
    assert!(ws.path().join("results").read_dir().unwrap().next().is_some());
}

#[test]
fn determinism_across_runs() {
    let a = modrep(&["yoshida", "--group", "V4", "-p", "2"]);
    let b = modrep(&["yoshida", "--group", "V4", "-p", "2"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout_of(&a).contains("dim E: 37"));
}
