use std::path::PathBuf;
use std::process::Command;

use shiftspec::cli::{parse_big_l, run, RunConfig, EXIT_INFEASIBLE, EXIT_INPUT, EXIT_OK, REPORT_HEADER};
use shiftspec::embedder::{parse_code_table, verify_selector};
use shiftspec::spec_props::SublinearL;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn config(command: &'static str, file: &str) -> RunConfig {
    RunConfig {
        command,
        input: data(file),
        alpha: None,
        delta: 0.1,
        scale: 1,
        big_l: None,
        depth: 1,
        full_support: None,
        limit: 8,
        seed: 7,
    }
}

#[test]
fn entropy_report() {
    let out = run(&config("entropy", "golden.sft"));
    assert_eq!(out.code, EXIT_OK);
    assert!(out.report.starts_with(REPORT_HEADER));
    assert!(out.report.contains("spectral: 0.481211825060"), "{}", out.report);
    assert!(out.report.contains("growth n=8:"));
}

#[test]
fn period_two_is_infeasible() {
    let out = run(&config("detect", "period2.sft"));
    assert_eq!(out.code, EXIT_INFEASIBLE);
    assert!(out.report.contains("irreducible: period 2"));
}

#[test]
fn alpha_at_entropy_is_infeasible() {
    let mut cfg = config("build-spec", "golden.sft");
    cfg.alpha = Some(0.5);
    let out = run(&cfg);
    assert_eq!(out.code, EXIT_INFEASIBLE);
    assert!(out.report.contains("h_top"));
}

#[test]
fn input_errors() {
    let out = run(&config("entropy", "missing.sft"));
    assert_eq!(out.code, EXIT_INPUT);
    let mut cfg = config("build-spec", "golden.sft");
    cfg.alpha = None;
    assert_eq!(run(&cfg).code, EXIT_INPUT);
    cfg.alpha = Some(0.1);
    cfg.big_l = Some("linear:3".into());
    assert_eq!(run(&cfg).code, EXIT_INPUT);
}

#[test]
fn reports_are_deterministic() {
    let mut cfg = config("build-spec", "golden.sft");
    cfg.alpha = Some(0.2);
    cfg.scale = 4;
    let a = run(&cfg);
    let b = run(&cfg);
    assert_eq!(a.code, EXIT_OK, "{}", a.report);
    assert_eq!(a.report, b.report);
    assert!(a.report.contains("alpha: 0.2\n"));
    assert!(a.report.contains("certificate admissibility PASS"));
    assert!(a.report.contains("certificate entropy PASS"));
}

#[test]
fn emitted_table_reverifies() {
    let mut cfg = config("embed", "full2.sft");
    cfg.alpha = Some(0.3);
    let out = run(&cfg);
    assert_eq!(out.code, EXIT_OK, "{}", out.report);
    let table = out.table.unwrap();
    assert!(out.report.contains(&table));
    let code = parse_code_table(&table).unwrap();
    assert_eq!(code.to_table(), table);
    let cert = verify_selector(&code);
    assert!(cert.passed());
    assert!(out.report.contains(&cert.to_string()));
}

#[test]
fn l_argument() {
    assert_eq!(parse_big_l("const:2").unwrap(), SublinearL::Const(2));
    let dir = std::env::temp_dir().join(format!("shiftspec-l-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("l.txt");
    std::fs::write(&file, "1 1 2 2 3\n").unwrap();
    let l = parse_big_l(&format!("table:{}", file.display())).unwrap();
    assert_eq!(l, SublinearL::Table(vec![1, 1, 2, 2, 3]));
    std::fs::write(&file, "2 1\n").unwrap();
    assert!(parse_big_l(&format!("table:{}", file.display())).is_err());
    assert!(parse_big_l("const:0").is_err());
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_shiftspec");
    let ok = Command::new(bin).arg("entropy").arg(data("full3.sft")).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("spectral: 1.098612288668"));
    let bad = Command::new(bin).arg("detect").arg(data("nope.sft")).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_INPUT));
    let infeasible = Command::new(bin)
        .args(["build-spec", "--alpha", "0.7"])
        .arg(data("full2.sft"))
        .output()
        .unwrap();
    assert_eq!(infeasible.status.code(), Some(EXIT_INFEASIBLE));
}
