use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_g2cubic"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().expect("spawn g2cubic");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn verify_g2_writes_a_passing_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g2.json");
    let (code, _, _) = run(&["verify", "g2", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["summary"]["failed"], 0);
    for c in v["checks"].as_array().unwrap() {
        assert_ne!(c["anchor"], "unregistered");
        assert_eq!(c["inputs_digest"].as_str().unwrap().len(), 16);
    }
}

#[test]
fn verify_finite_exact_path_is_zero() {
    let (code, out, _) = run(&["verify", "finite", "--modulus", "5"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let exact: Vec<_> = v["checks"].as_array().unwrap().iter().filter(|c| c["check_id"].as_str().unwrap().contains("exact")).collect();
    assert_eq!(exact.len(), 8);
    assert!(exact.iter().all(|c| c["residual"] == 0.0));
}

#[test]
fn zero_tolerance_exits_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.txt");
    std::fs::write(&cfg, "moduli = 5\nrandom_functions = 2\ntolerance = 0\n").unwrap();
    let (code, _, err) = run(&["verify", "finite", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("FAIL finite."));
}

#[test]
fn bad_config_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.txt");
    std::fs::write(&cfg, "max_disc = 99999999\n").unwrap();
    let (code, _, err) = run(&["verify", "classes", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("resource guard"), "{err}");
    let (code, _, err) = run(&["verify", "finite", "--modulus", "9"]);
    assert_eq!(code, 2);
    assert!(err.contains("prime"), "{err}");
}

#[test]
fn class_export_is_idempotent_and_has_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("t.csv");
    let json = dir.path().join("t.json");
    for _ in 0..2 {
        assert_eq!(run(&["classes", "--max-disc", "27", "--strategy", "reduction", "--out", csv.to_str().unwrap(), "--format", "csv"]).0, 0);
    }
    let first = std::fs::read(&csv).unwrap();
    assert_eq!(run(&["classes", "--max-disc", "27", "--strategy", "box-oracle", "--out", csv.to_str().unwrap(), "--format", "csv"]).0, 0);
    let text = String::from_utf8(first).unwrap();
    assert_eq!(text.lines().next().unwrap(), "disc,x1,x2,x3,x4,stab_order,splitting_index");
    for d in ["1", "-23", "-27"] {
        assert!(text.lines().any(|l| l.split(',').next() == Some(d)), "missing disc {d}");
    }
    assert_eq!(run(&["classes", "--max-disc", "27", "--strategy", "reduction", "--out", json.to_str().unwrap(), "--format", "json"]).0, 0);
    let t = g2_cubic::enumeration::ClassTable::from_json(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(t.to_csv(), text);
}

#[test]
fn missing_output_directory_is_an_io_error() {
    let (code, _, err) = run(&["classes", "--max-disc", "5", "--out", "/nonexistent/dir/t.csv"]);
    assert_eq!(code, 2);
    assert!(err.contains("/nonexistent/dir"), "{err}");
}

#[test]
fn zeta_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let b = dir.path().join("b.txt");
    std::fs::write(&b, "vol_L = 2\nphi0 = 1\nphihat0 = 0.5\ndbl_phi = 0.25\n").unwrap();
    let (code, out, _) = run(&["zeta", "residues", "--bundle", b.to_str().unwrap()]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines, ["pole,residue", "0,-2", "1/3,0", "5/3,0", "2,1.25"]);

    let (code, out, _) = run(&["zeta", "densities", "--p", "2", "--k", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next().unwrap(), "p,k,j,count,density_num,density_den");
    assert_eq!(out.lines().count(), 4);

    let (code, out, _) = run(&["zeta", "sigma1", "--s", "2", "--primes", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("2,1.333"));
    assert_eq!(run(&["zeta", "sigma1", "--s", "-1"]).0, 2);
}

#[test]
fn form_subcommand_classifies() {
    let (code, out, _) = run(&["form", "1,0,-1,-1"]);
    assert_eq!(code, 0);
    assert!(out.contains("disc -23") && out.contains("Regular(3)"));
    let (code, out, _) = run(&["form", "0,0,0,5", "--by", "1,2;3,4"]);
    assert_eq!(code, 0);
    assert!(out.contains("S1"));
}
