use std::path::Path;
use std::process::Command;

use serde_json::Value;
use siegelfc::table::Table;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("siegelfc").chain(args.iter().copied());
    let code = siegelfc::cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn gen(dir: &Path, kind: &str, prec: u32) -> String {
    let path = dir.join(format!("{kind}-{prec}.json"));
    let p = path.to_str().unwrap().to_string();
    let (code, _, err) = run(&[
        "gen",
        "--kind",
        kind,
        "--prec",
        &prec.to_string(),
        "--out",
        &p,
    ]);
    assert_eq!(code, 0, "{err}");
    p
}

#[test]
fn gen_siegel_contains_leading_entry() {
    let dir = tempfile::tempdir().unwrap();
    let p = gen(dir.path(), "siegel10", 100);
    let text = std::fs::read_to_string(&p).unwrap();
    assert!(text.contains(r#"{"form":[1,1,1],"value":"1"}"#));
    assert_eq!(Table::load(Path::new(&p)).unwrap().kind(), "siegel");
}

#[test]
fn gen_jacobi_low_precision() {
    let dir = tempfile::tempdir().unwrap();
    let p = gen(dir.path(), "jacobi10", 4);
    let t = Table::load(Path::new(&p)).unwrap();
    match t {
        Table::Jacobi { entries, .. } => {
            assert_eq!(entries.len(), 1);
            assert_eq!(entries[0].d, 3);
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn gen_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for kind in ["jacobi12", "siegel12", "half-ez10"] {
        let x = std::fs::read(gen(a.path(), kind, 120)).unwrap();
        let y = std::fs::read(gen(b.path(), kind, 120)).unwrap();
        assert_eq!(x, y, "{kind}");
    }
}

#[test]
fn gen_round_trip_through_table() {
    let dir = tempfile::tempdir().unwrap();
    for kind in ["jacobi10", "siegel10", "half-ez12"] {
        let p = gen(dir.path(), kind, 80);
        let text = std::fs::read_to_string(&p).unwrap();
        let t = Table::load(Path::new(&p)).unwrap();
        assert_eq!(format!("{}\n", t.to_json()), text);
        let rebuilt = match &t {
            Table::Jacobi { .. } => Table::from_jacobi(&t.to_jacobi().unwrap()),
            Table::Siegel { .. } => Table::from_siegel(&t.to_siegel().unwrap()).unwrap(),
            Table::HalfIntegral { .. } => Table::from_half(&t.to_half().unwrap()),
        };
        assert_eq!(rebuilt, t);
    }
}

#[test]
fn usage_errors() {
    let (code, _, err) = run(&["gen", "--kind", "jacobi99", "--prec", "4", "--out", "x"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
    assert_eq!(run(&[]).0, 2);
    assert_eq!(run(&["scan"]).0, 2);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("Exit codes"));
}

#[test]
fn scan_fundamental_on_table() {
    let dir = tempfile::tempdir().unwrap();
    let p = gen(dir.path(), "siegel10", 100);
    let (code, out, _) = run(&["scan", "--form", &p, "--mode", "fundamental", "--X", "12"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["X"], 12);
    assert_eq!(v["hits"][0]["d"], 3);
    assert_eq!(v["hits"][0]["witness"], serde_json::json!([1, 1, 1]));
    assert_eq!(v["hits"][0]["value"], "1");

    let (code, out, _) = run(&[
        "scan",
        "--form",
        &p,
        "--mode",
        "primitive",
        "--X",
        "30",
        "--format",
        "csv",
    ]);
    assert_eq!(code, 0);
    assert!(out.starts_with("d,witness,value\n3,\"[1,1,1]\",1\n"));

    // the table stops at |disc| < 100
    let (code, _, err) = run(&["scan", "--form", &p, "--mode", "fundamental", "--X", "500"]);
    assert_eq!(code, 4, "{err}");
    // wrong table type
    let (code, _, _) = run(&["scan", "--form", &p, "--mode", "half", "--X", "10"]);
    assert_eq!(code, 3);
}

#[test]
fn scan_half_on_table() {
    let dir = tempfile::tempdir().unwrap();
    let p = gen(dir.path(), "half-ez12", 200);
    let (code, out, _) = run(&["scan", "--form", &p, "--mode", "half", "--X", "200"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let hits = v["hits"].as_array().unwrap();
    assert!(!hits.is_empty());
    assert!(hits.iter().all(|h| h["d"] == h["witness"]));
}

#[test]
fn extract_command() {
    let dir = tempfile::tempdir().unwrap();
    let p = gen(dir.path(), "siegel10", 100);
    let (code, out, _) = run(&["extract", "--form", &p, "--p", "3", "--prec", "50"]);
    assert_eq!(code, 0);
    let t = Table::from_json(out.trim()).unwrap();
    let h = t.to_half().unwrap();
    assert_eq!((h.kappa(), h.level()), (9, 12));
    // doubling at d0 = 11 against a(F10, (1,1,3)) = c(11) = 99
    assert_eq!(h.coeff(11).unwrap(), siegelfc::arith::rat(198));
    assert_eq!(
        run(&["extract", "--form", &p, "--p", "2", "--prec", "50"]).0,
        3
    );
    assert_eq!(
        run(&["extract", "--form", &p, "--p", "1", "--prec", "50"]).0,
        3
    );
    assert_eq!(
        run(&["extract", "--form", &p, "--p", "3", "--prec", "101"]).0,
        4
    );
    let missing = dir.path().join("none.json");
    assert_eq!(
        run(&[
            "extract",
            "--form",
            missing.to_str().unwrap(),
            "--p",
            "3",
            "--prec",
            "5"
        ])
        .0,
        1
    );
}

#[test]
fn bessel_command() {
    let dir = tempfile::tempdir().unwrap();
    let p = gen(dir.path(), "siegel10", 100);
    for args in [&["--disc", "3"][..], &["--disc", "3", "--char", "0"][..]] {
        let mut argv = vec!["bessel", "--form", &p];
        argv.extend_from_slice(args);
        let (code, out, _) = run(&argv);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v, serde_json::json!({"char": 0, "real": 1.0, "imag": 0.0}));
    }

    let (code, out, _) = run(&["bessel", "--form", &p, "--disc", "-23"]);
    assert_eq!(code, 0);
    let rows: Vec<Value> = out
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0]["real"], 8208.0);
    assert_eq!(rows[1]["real"], 0.0);
    assert_eq!(run(&["bessel", "--form", &p, "--disc", "12"]).0, 3);
    assert_eq!(
        run(&["bessel", "--form", &p, "--disc", "23", "--char", "3"]).0,
        3
    );
}

#[test]
fn sieve_command() {
    let dir = tempfile::tempdir().unwrap();
    let p = gen(dir.path(), "half-ez12", 500);
    let (code, out, _) = run(&[
        "sieve", "--form", &p, "--M", "1", "--X", "50", "--cutoff", "400",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["direct"].as_f64().unwrap() > 0.0);
    assert!(v["relative_diff"].as_f64().unwrap() < 1e-10);
    let (code, _, _) = run(&[
        "sieve", "--form", &p, "--M", "1", "--X", "50", "--cutoff", "500",
    ]);
    assert_eq!(code, 4);
}

#[test]
fn check_single_suites() {
    let (code, out, _) = run(&["check", "--suite", "theta"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["results"].as_array().unwrap().len(), 30);

    let (code, out, _) = run(&["check", "--suite", "doubling", "--prec", "120"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(run(&["check", "--suite", "bogus"]).0, 2);
}

#[test]
fn binary_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_siegelfc");
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("j.json");
    let status = Command::new(exe)
        .args(["gen", "--kind", "jacobi12", "--prec", "20", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let bad = Command::new(exe)
        .args(["gen", "--kind", "nope"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(bad.stdout.is_empty());
    assert!(!bad.stderr.is_empty());
    let corrupt = dir.path().join("bad.json");
    std::fs::write(&corrupt, "{\"type\":\"siegel\"").unwrap();
    let parse = Command::new(exe)
        .args(["scan", "--mode", "fundamental", "--X", "5", "--form"])
        .arg(&corrupt)
        .output()
        .unwrap();
    assert_eq!(parse.status.code(), Some(3));
}
