//! End-to-end tests of the `sepinv` binary: commands, exit codes, report
//! shape, and byte-identical JSON determinism.

use std::process::{Command, Output};

fn sepinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sepinv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn bound_c5_over_q_gives_3() {
    let out = sepinv(&["bound", "--group", "C5", "--field", "Q", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"]["minimal_degree"], 3);
    assert_eq!(v["result"]["valid"], true);
    assert_eq!(v["result"]["certificate"]["group"], "C5");
}

#[test]
fn bound_c3c3_over_r_gives_3() {
    let out = sepinv(&["bound", "--group", "C3xC3", "--field", "R", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"]["minimal_degree"], 3);
}

#[test]
fn bound_exact_degree_failure_exits_2() {
    let out = sepinv(&["bound", "--group", "C5", "--field", "R", "--degree", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("FAIL"));
    assert!(
        stdout(&out).contains("[1, 4]"),
        "failing subset is the conjugate pair"
    );
}

#[test]
fn bound_writes_recheckable_certificate() {
    let dir = std::env::temp_dir().join(format!("sepinv-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cert.json");
    let out = sepinv(&[
        "bound",
        "--group",
        "C5",
        "--field",
        "Q",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let cert: sepinv_core::SeparationCertificate = serde_json::from_str(&text).unwrap();
    assert!(cert.valid);
    assert_eq!(cert.degree, 3);
    assert!(sepinv_core::recheck_certificate(&cert, &sepinv_core::Budgets::default()).unwrap());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn witness_presets_pass() {
    for args in [
        vec!["witness", "--preset", "cp", "--p", "5"],
        vec!["witness", "--preset", "c4"],
        vec!["witness", "--preset", "s3"],
    ] {
        let out = sepinv(&args);
        assert!(out.status.success(), "{args:?}: {}", stdout(&out));
        assert!(stdout(&out).contains("PASS"));
    }
}

#[test]
fn witness_c4_reports_degree_boundary() {
    let out = sepinv(&["witness", "--preset", "c4", "--degree", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("not_separated_at_degree_3"));
    assert!(text.contains("separated_at_degree_4"));
    assert!(text.contains("not separated at degree 3"));
}

#[test]
fn separate_exit_codes() {
    let not_sep = sepinv(&[
        "separate",
        "--group",
        "C4",
        "--field",
        "Q",
        "--v",
        "3,4,-3,-4",
        "--w",
        "5,0,-5,0",
        "--degree",
        "3",
    ]);
    assert_eq!(not_sep.status.code(), Some(2));
    let sep = sepinv(&[
        "separate",
        "--group",
        "C4",
        "--field",
        "Q",
        "--v",
        "3,4,-3,-4",
        "--w",
        "5,0,-5,0",
        "--degree",
        "4",
    ]);
    assert_eq!(sep.status.code(), Some(0));
    assert!(stdout(&sep).contains("witness"));
}

#[test]
fn separate_accepts_fractions() {
    let out = sepinv(&[
        "separate", "--group", "C2", "--field", "Q", "--v", "1/2,-1/2", "--w", "-1/2,1/2",
        "--degree", "2", "--json",
    ]);
    // w is the swap of v: same orbit, never separated
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"]["same_orbit"], true);
    assert_eq!(v["result"]["galois_compatible"], true);
}

#[test]
fn decompose_roundtrip() {
    let out = sepinv(&[
        "decompose",
        "--group",
        "C3xC3",
        "--seq",
        "2*(1,0)+2*(0,1)+1*(1,1)",
        "--json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"]["recombines"], true);
}

#[test]
fn decompose_rejects_non_product_one() {
    let out = sepinv(&["decompose", "--group", "C3", "--seq", "1*(1)"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("product-one"), "{err}");
}

#[test]
fn usage_errors_exit_1() {
    for args in [
        vec!["bound", "--group", "notagroup", "--field", "Q"],
        vec!["bound", "--group", "C5", "--field", "F7"],
        vec!["witness", "--preset", "nope"],
        vec![
            "separate", "--group", "C4", "--field", "Q", "--v", "1,2", "--w", "1,2,3,4",
            "--degree", "2",
        ],
    ] {
        let out = sepinv(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
    }
    // clap-level parse failure also maps to 1
    let out = sepinv(&["bogus-subcommand"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn atoms_c3_listing() {
    let out = sepinv(&["atoms", "--group", "C3", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"]["count"], 4);
    assert_eq!(v["result"]["max_atom_length"], 3);
}

#[test]
fn reproduce_single_criterion() {
    let out = sepinv(&["reproduce", "--only", "atoms_exact"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("[PASS] atoms_exact"));
    assert!(text.contains("1/1 criteria passed"));

    let bad = sepinv(&["reproduce", "--only", "not_a_criterion"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn json_reports_byte_identical_without_timing() {
    let a = sepinv(&["bound", "--group", "C5", "--field", "R", "--json"]);
    let b = sepinv(&["bound", "--group", "C5", "--field", "R", "--json"]);
    assert_eq!(stdout(&a), stdout(&b));
    // --timing adds a field, so reports may differ; it must parse either way
    let t = sepinv(&[
        "bound", "--group", "C5", "--field", "R", "--json", "--timing",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&t)).unwrap();
    assert!(v["timing_ms"].is_number());
}

#[test]
fn workers_flag_is_deterministic() {
    let seq = sepinv(&["bound", "--group", "C3xC3", "--field", "R", "--json"]);
    let par = sepinv(&[
        "bound",
        "--group",
        "C3xC3",
        "--field",
        "R",
        "--json",
        "--workers",
        "4",
    ]);
    let vs: serde_json::Value = serde_json::from_str(&stdout(&seq)).unwrap();
    let vp: serde_json::Value = serde_json::from_str(&stdout(&par)).unwrap();
    assert_eq!(vs["result"]["certificate"], vp["result"]["certificate"]);
}
