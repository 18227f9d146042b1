use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use hsbasis::bases::gellmann_basis;
use hsbasis::io::{matrix_to_string, read_matrix, write_basis, write_matrix, write_vector};
use hsbasis::operators::{bell_projector, swap_operator};
use hsbasis::random::{random_matrix, seeded};
use hsbasis::{tau, Complex64, ComplexMatrix};
use tempfile::TempDir;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hsbasis"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

fn run_ok(dir: &Path, args: &[&str]) -> Output {
    let out = run(dir, args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

#[test]
fn build_writes_expansions() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    run_ok(
        p,
        &[
            "build",
            "swap",
            "--dim",
            "3",
            "--basis",
            "weyl",
            "--out",
            "swap.json",
        ],
    );
    let swap = read_matrix(p.join("swap.json")).unwrap();
    assert!(swap.distance(swap_operator(3).unwrap().matrix()) <= tau(3));

    run_ok(
        p,
        &[
            "build",
            "bell",
            "--dim",
            "2",
            "--basis",
            "random",
            "--seed",
            "5",
            "--out",
            "bell.json",
        ],
    );
    let bell = read_matrix(p.join("bell.json")).unwrap();
    assert!(bell.distance(bell_projector(2).unwrap().matrix()) <= tau(2));

    let out = run_ok(p, &["build", "coherent", "--dim", "2"]);
    let coherent = hsbasis::io::parse_matrix(&String::from_utf8(out.stdout).unwrap()).unwrap();
    let want = ComplexMatrix::from_vec(2, 2, vec![Complex64::new(2f64.sqrt(), 0.0); 4]).unwrap();
    assert!(coherent.distance(&want) <= tau(2));
}

#[test]
fn verify_text_and_subsets() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    let out = run_ok(
        p,
        &[
            "verify",
            "--dim",
            "2",
            "--basis",
            "standard",
            "--ids",
            "FOUROPS_1,purity_link",
        ],
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("FOUROPS_1") && text.contains("PURITY_LINK"));
    assert!(!text.contains("SWAP_EXPANSION"));
    assert!(text.contains("2 of 2 identities passed"));

    run_ok(
        p,
        &[
            "verify",
            "--dim",
            "2",
            "--report",
            "machine",
            "--out",
            "report.json",
        ],
    );
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(p.join("report.json")).unwrap()).unwrap();
    assert_eq!(doc["config"]["basis"], "gellmann");
    assert!(doc["results"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["verdict"] == "pass"));
}

#[test]
fn verify_reports_failures_in_machine_form() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    let scaled = gellmann_basis(2)
        .unwrap()
        .map_elements(|g| g.scale_real(1.5));
    write_basis(p.join("scaled.json"), &scaled).unwrap();
    let out = run(
        p,
        &[
            "verify",
            "--basis",
            "file:scaled.json",
            "--report",
            "machine",
        ],
    );
    assert_eq!(out.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let swap = &doc["results"][0];
    assert_eq!(swap["id"], "SWAP_EXPANSION");
    assert_eq!(swap["verdict"], "fail");
    // every element scaled by c gives c² SWAP, and ‖SWAP‖ = d
    assert!((swap["residual"].as_f64().unwrap() - 1.25 * 2.0).abs() < 1e-9);
    assert_eq!(
        run(p, &["verify", "--dim", "3", "--basis", "file:scaled.json"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn transform_between_bases() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    run_ok(
        p,
        &[
            "transform",
            "--from",
            "standard",
            "--to",
            "gellmann",
            "--dim",
            "2",
            "--out",
            "u.json",
        ],
    );
    let u = read_matrix(p.join("u.json")).unwrap();
    assert!((&u * &u.dagger()).distance(&ComplexMatrix::identity(4)) <= tau(2));
    let h = std::f64::consts::FRAC_1_SQRT_2;
    assert!((u[(1, 1)].re - h).abs() < 1e-15 && (u[(1, 2)].re - h).abs() < 1e-15);

    run_ok(
        p,
        &[
            "transform",
            "--from",
            "weyl",
            "--to",
            "weyl",
            "--dim",
            "3",
            "--out",
            "same.json",
        ],
    );
    assert!(
        read_matrix(p.join("same.json"))
            .unwrap()
            .distance(&ComplexMatrix::identity(9))
            <= tau(3)
    );
}

#[test]
fn map_subcommands() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    let mut rng = seeded(3);
    let a = random_matrix(3, &mut rng);
    write_matrix(p.join("a.json"), &a).unwrap();
    run_ok(
        p,
        &[
            "map",
            "transpose",
            "--dim",
            "3",
            "--basis",
            "weyl",
            "--input",
            "a.json",
            "--out",
            "t.json",
        ],
    );
    assert!(
        read_matrix(p.join("t.json"))
            .unwrap()
            .distance(&a.transpose())
            <= tau(3)
    );

    let b = random_matrix(4, &mut rng);
    write_matrix(p.join("b.json"), &b).unwrap();
    run_ok(
        p,
        &[
            "map", "pt", "--dim", "2", "--party", "1", "--input", "b.json", "--out", "pt.json",
        ],
    );
    let want = hsbasis::hs_core::partial_transpose_raw(&b, hsbasis::Party::First, 2).unwrap();
    assert!(read_matrix(p.join("pt.json")).unwrap().distance(&want) <= tau(2));

    run_ok(
        p,
        &[
            "map",
            "reshuffle",
            "--dim",
            "2",
            "--input",
            "b.json",
            "--out",
            "r.json",
        ],
    );
    let want = hsbasis::hs_core::reshuffle_raw(&b, 2).unwrap();
    assert!(read_matrix(p.join("r.json")).unwrap().distance(&want) <= tau(2));

    fs::write(
        p.join("p0.json"),
        matrix_to_string(&ComplexMatrix::unit(2, 0, 0)),
    )
    .unwrap();
    run_ok(
        p,
        &[
            "map",
            "inversion",
            "--dim",
            "2",
            "--input",
            "p0.json",
            "--out",
            "s.json",
        ],
    );
    assert!(
        read_matrix(p.join("s.json"))
            .unwrap()
            .distance(&ComplexMatrix::unit(2, 1, 1))
            <= tau(2)
    );

    write_matrix(p.join("bell.json"), bell_projector(2).unwrap().matrix()).unwrap();
    run_ok(
        p,
        &[
            "map",
            "inversion",
            "--dim",
            "2",
            "--input",
            "bell.json",
            "--out",
            "s2.json",
        ],
    );
    let four_term =
        hsbasis::maps::state_inversion_two_analytic(&bell_projector(2).unwrap()).unwrap();
    assert!(
        read_matrix(p.join("s2.json"))
            .unwrap()
            .distance(four_term.matrix())
            <= tau(2)
    );

    // a non-Hermitian input violates the inversion precondition
    assert_eq!(
        run(p, &["map", "inversion", "--dim", "3", "--input", "a.json"])
            .status
            .code(),
        Some(2)
    );
    // operand of the wrong size
    assert_eq!(
        run(p, &["map", "trace", "--dim", "2", "--input", "a.json"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(
            p,
            &["map", "pt", "--dim", "2", "--party", "3", "--input", "b.json"]
        )
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn choi_subcommand() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    run_ok(
        p,
        &[
            "choi", "--map", "identity", "--dim", "3", "--basis", "weyl", "--out", "c.json",
        ],
    );
    assert!(
        read_matrix(p.join("c.json"))
            .unwrap()
            .distance(bell_projector(3).unwrap().matrix())
            <= tau(3)
    );

    run_ok(
        p,
        &[
            "choi",
            "--map",
            "transpose",
            "--dim",
            "2",
            "--out",
            "ct.json",
        ],
    );
    let want = swap_operator(2).unwrap().matrix().scale_real(0.5);
    assert!(read_matrix(p.join("ct.json")).unwrap().distance(&want) <= tau(2));

    write_matrix(p.join("l.json"), &ComplexMatrix::identity(4)).unwrap();
    run_ok(
        p,
        &[
            "choi",
            "--map",
            "file:l.json",
            "--dim",
            "2",
            "--out",
            "cf.json",
        ],
    );
    assert!(
        read_matrix(p.join("cf.json"))
            .unwrap()
            .distance(bell_projector(2).unwrap().matrix())
            <= tau(2)
    );
    assert_eq!(
        run(p, &["choi", "--map", "file:l.json", "--dim", "3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn concurrence_and_decompose() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    let psi = hsbasis::operators::bell_state(3).unwrap();
    write_vector(p.join("bell3.json"), &psi).unwrap();
    let out = run_ok(p, &["concurrence", "--state", "bell3.json"]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim(),
        "1.3333333333"
    );

    let mut unnormalized = psi.clone();
    unnormalized[0] *= 2.0;
    write_vector(p.join("bad.json"), &unnormalized).unwrap();
    assert_eq!(
        run(p, &["concurrence", "--state", "bad.json"])
            .status
            .code(),
        Some(2)
    );

    let g = gellmann_basis(2).unwrap();
    write_matrix(p.join("z.json"), g.get(1, 1)).unwrap();
    let out = run_ok(p, &["decompose", "--dim", "2", "--input", "z.json"]);
    let coeffs = hsbasis::io::parse_matrix(&String::from_utf8(out.stdout).unwrap()).unwrap();
    let want = ComplexMatrix::from_real(2, 2, &[0.0, 0.0, 0.0, 2.0]).unwrap();
    assert!(coeffs.distance(&want) < 1e-15);
}

#[test]
fn usage_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let p = dir.path();
    assert_eq!(run(p, &["verify"]).status.code(), Some(2));
    assert_eq!(
        run(p, &["verify", "--dim", "2", "--basis", "pauli"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(p, &["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(p, &["verify", "--dim", "1"]).status.code(), Some(2));
    assert_eq!(
        run(
            p,
            &["map", "trace", "--dim", "2", "--input", "missing.json"]
        )
        .status
        .code(),
        Some(2)
    );
}
