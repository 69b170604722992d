//! End-to-end tests of the `gia` binary: output shapes, exit codes,
//! determinism and file-format round trips.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn gia(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gia"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

#[test]
fn h2_counts() {
    let out = gia(&["h2", "--group", "Z2xZ2", "--mu", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "classes=2");
    let out = gia(&["h2", "--group", "Z4", "--mu", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["classes"], 1);
}

#[test]
fn twisted_involutions_output() {
    let coc = fixture("pauli.coc");
    let out = gia(&[
        "twisted",
        "involutions",
        "--group",
        "Z2xZ2",
        "--cocycle",
        coc.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "exists=true mu=0,0,0,1 classes=4");
}

#[test]
fn involution_nonexistence_is_success() {
    // Nondegenerate cocycle on Z3xZ3: table e(u,v) = u1*v2 mod 3.
    let dir = tempdir();
    let mut body = String::from("group=Z3xZ3 N=3\n");
    for u in 0..9usize {
        for v in 0..9usize {
            let e = ((u / 3) * (v % 3)) % 3;
            if e != 0 {
                body.push_str(&format!("{u} {v} {e}\n"));
            }
        }
    }
    let path = dir.join("nondeg.coc");
    std::fs::write(&path, body).unwrap();
    let out = gia(&[
        "twisted",
        "involutions",
        "--group",
        "Z3xZ3",
        "--cocycle",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(out.status.success(), "mathematical negatives exit 0");
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["exists"], false);
    assert_eq!(v["classes"], 0);
}

#[test]
fn utn_admits_examples() {
    let out = gia(&["utn", "admits", "--eta", "g,g^-1", "--group", "Z4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "admits=true");
    let out = gia(&["utn", "admits", "--eta", "g,g", "--group", "Z4"]);
    assert_eq!(stdout(&out).trim(), "admits=false");
    assert!(out.status.success());
    // Inconsistent --n is a domain error (exit 1).
    let out = gia(&[
        "utn", "admits", "--eta", "g,g^-1", "--group", "Z4", "--n", "4",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn utn_classify_round_trip() {
    let dir = tempdir();
    let upath = dir.join("u.mat");
    std::fs::write(&upath, "n=2\n3\n2\n3\n").unwrap();
    let out = gia(&[
        "utn",
        "classify",
        "--u",
        upath.to_str().unwrap(),
        "--base",
        "tau",
        "--eta",
        "1",
        "--group",
        "Z2",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert!(text.starts_with("type=orthogonal"), "{text}");
    assert!(text.contains("n=2"));
}

#[test]
fn cocycle_verify_exit_codes() {
    let out = gia(&["cocycle", "verify", fixture("pauli.coc").to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "valid=true");
    // A well-formed file that fails the identity: still exit 0.
    let dir = tempdir();
    let bad = dir.join("bad.coc");
    std::fs::write(&bad, "group=Z2 N=2\n0 1 1\n").unwrap();
    let out = gia(&["cocycle", "verify", bad.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "valid=false");
    // Malformed input: exit 2 with file, line and expectation.
    let junk = dir.join("junk.coc");
    std::fs::write(&junk, "group=Z2 N=2\n0 1\n").unwrap();
    let out = gia(&["cocycle", "verify", junk.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "{err}");
    assert!(err.contains("junk.coc"), "{err}");
}

#[test]
fn realize_json_shape() {
    let out = gia(&[
        "realize",
        "--group",
        "Z2xZ2",
        "--beta",
        fixture("pauli.beta").to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["n"], 2);
    assert_eq!(v["basis"].as_array().unwrap().len(), 4);
}

#[test]
fn matrix_build_and_recover_round_trip() {
    let out = gia(&[
        "matrix",
        "build",
        "--spec",
        fixture("pauli_m0.json").to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["exists"], true);
    assert_eq!(v["m"], 0);
    assert_eq!(v["s"], 1);
    // Recover expects a psi action file; generate it from the library.
    use gia_core::degree::DegreeCtx;
    use gia_core::matinv::{build_phi, involution_from_phi, GradedModule, InvolutionSpec};
    use gia_core::twisted::{make_involution, TwistedGroupAlgebra};
    let spec_body = std::fs::read_to_string(fixture("pauli_m0.json")).unwrap();
    let spec_file = gia_core::text::parse_matrix_spec(&spec_body).unwrap();
    let sigma_body = std::fs::read_to_string(fixture("pauli.coc")).unwrap();
    let resolved = spec_file.resolve(Some(&sigma_body)).unwrap();
    let algebra = TwistedGroupAlgebra::new(resolved.group.clone(), resolved.sigma.clone()).unwrap();
    let psi0 = make_involution(&algebra).unwrap();
    let ctx: DegreeCtx = resolved.ctx.clone();
    let module = GradedModule::new(algebra.clone(), ctx, resolved.gamma.clone()).unwrap();
    let ispec = InvolutionSpec::new(module, psi0, resolved.eps).unwrap();
    let inv = involution_from_phi(build_phi(&ispec).unwrap()).unwrap();
    let k = ispec.rank();
    let dim = algebra.dim();
    let units = k * k * dim;
    let mut rows = vec![vec![gia_core::cyclotomic::CycRational::zero(); units]; units];
    for i in 0..k {
        for j in 0..k {
            for u in 0..dim {
                let img = inv.apply_unit(i, j, u).unwrap();
                let flat = (i * k + j) * dim + u;
                for a in 0..k {
                    for b in 0..k {
                        for (&w, c) in img.at(a, b).coeffs() {
                            rows[flat][(a * k + b) * dim + w] = c.clone();
                        }
                    }
                }
            }
        }
    }
    let psi_text =
        gia_core::text::render_psi_action_file(k, algebra.group(), algebra.modulus(), &rows)
            .unwrap();
    let dir = tempdir();
    let psi_path = dir.join("psi.act");
    std::fs::write(&psi_path, psi_text).unwrap();
    let out = gia(&[
        "matrix",
        "recover",
        "--spec",
        fixture("pauli_m0.json").to_str().unwrap(),
        "--psi",
        psi_path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["recovered"], true);
    assert_eq!(v["eps"], 1);
}

#[test]
fn matrix_build_symplectic_with_formal_g0() {
    let out = gia(&[
        "matrix",
        "build",
        "--spec",
        fixture("pauli_sympl.json").to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["eps"], -1);
    assert_eq!(v["m"], 0);
    // The lower hyperbolic block carries the -1 sign.
    assert_eq!(v["phi"][1][0][0]["scalar"], "-1");
}

#[test]
fn search_reports_and_hits_line() {
    let groups = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../groups/order16");
    let out = gia(&[
        "search",
        "--max-order",
        "16",
        "--groups",
        groups.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    let lines: Vec<&str> = text.trim().lines().collect();
    assert_eq!(lines.len(), 11, "10 reports plus the summary line");
    assert!(lines.last().unwrap().starts_with("hits="));
    for l in &lines[..10] {
        let v: serde_json::Value = serde_json::from_str(l).unwrap();
        assert!(v.get("group").is_some());
    }
    // The abelian decoy is skipped with its reason.
    assert!(text.contains("\"skipped\":\"abelian\""));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["h2", "--group", "Z4xZ2", "--mu", "4", "--format", "json"];
    let a = gia(&args);
    let b = gia(&args);
    assert_eq!(a.stdout, b.stdout);
    let coc = fixture("pauli.coc");
    let args = [
        "twisted",
        "involutions",
        "--group",
        "Z2xZ2",
        "--cocycle",
        coc.to_str().unwrap(),
        "--format",
        "json",
    ];
    let a = gia(&args);
    let b = gia(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn selftest_runs_deterministically() {
    let a = gia(&["selftest", "--seed", "42"]);
    assert!(a.status.success());
    let b = gia(&["selftest", "--seed", "42"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("selftest=ok"));
}

#[test]
fn unknown_flags_are_rejected() {
    let out = gia(&["h2", "--group", "Z2", "--mu", "2", "--frobnicate"]);
    assert!(!out.status.success());
}

fn tempdir() -> PathBuf {
    let base = std::env::temp_dir().join(format!(
        "gia-cli-test-{}-{}",
        std::process::id(),
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .unwrap()
            .as_nanos()
    ));
    std::fs::create_dir_all(&base).unwrap();
    base
}
