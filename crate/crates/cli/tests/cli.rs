use std::path::PathBuf;
use std::process::Command;

use epcheck_cli::{run_args, EXIT_CAP, EXIT_DATA_REQUIRED, EXIT_DISCREPANCY, EXIT_ERROR, EXIT_OK};
use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name).to_string_lossy().into_owned()
}

fn ep(args: &[&str]) -> epcheck_cli::Outcome {
    run_args(std::iter::once("ep").chain(args.iter().copied()))
}

fn registry_json() -> Value {
    serde_json::from_str(&std::fs::read_to_string(data("table12.json")).unwrap()).unwrap()
}

/// Writes a registry next to a copy of the L_7(2) dataset and audits it.
fn audit_registry_value(reg: &Value) -> epcheck_cli::Outcome {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(data("l7_wedge3.mxl"), dir.path().join("l7_wedge3.mxl")).unwrap();
    let path = dir.path().join("reg.json");
    std::fs::write(&path, serde_json::to_string(reg).unwrap()).unwrap();
    ep(&["audit", "--registry", path.to_str().unwrap()])
}

#[test]
fn binary_prints_wedge_dimension() {
    let out = Command::new(env!("CARGO_BIN_EXE_ep"))
        .args(["wedge-dim", "--r", "7", "--exponents", "0,0,0,0,0,1,2,4", "--m", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "11\n");
}

#[test]
fn binary_exit_code_on_bad_input() {
    let out = Command::new(env!("CARGO_BIN_EXE_ep")).args(["direct", "--group", "/nonexistent.grp"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_ERROR));
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("error: cannot read"));
}

#[test]
fn spin_and_bounds() {
    let out = ep(&["spin-dim", "--kind", "Deven", "--r", "5", "--t", "0,0,1,1,1,2,2,2"]);
    assert_eq!((out.code, out.stdout.as_str()), (EXIT_OK, "24\n"));
    let out = ep(&["bound", "--alpha", "612624", "--d", "40"]);
    assert_eq!(out.stdout, "notEP [(2^20-1)*612624 = 642382210800 < 2^40-1 = 1099511627775]\n");
    let out = ep(&["refined-bound", "--part", "10:240862567876011", "--part", "16:166862538433514", "--d", "64"]);
    assert!(out.stdout.contains("= 11181738863177499243 < 2^64-1"), "{}", out.stdout);
    let out = ep(&["refined-bound", "--part", "65:1", "--d", "64"]);
    assert_eq!(out.code, EXIT_ERROR);
    let out = ep(&["bound", "--alpha", "-3", "--d", "40"]);
    assert_eq!(out.code, EXIT_ERROR);
}

#[test]
fn direct_verdicts() {
    let verdict = |file: &str| ep(&["direct", "--group", &data(file)]).stdout.split_whitespace().next().unwrap().to_string();
    assert_eq!(verdict("gl3_natural.grp"), "EP");
    assert_eq!(verdict("c7_singer.grp"), "EP");
    assert_eq!(verdict("frob21.grp"), "EP");
    assert_eq!(verdict("c15_singer.grp"), "notEP");
}

#[test]
fn cap_and_reducibility_exit_codes() {
    let out = ep(&["direct", "--group", &data("gl4_natural.grp"), "--cap-dim", "3"]);
    assert_eq!(out.code, EXIT_CAP);
    let out = ep(&["direct", "--group", &data("gl3_natural.grp"), "--module", "tensor(natural,natural)"]);
    assert_eq!(out.code, EXIT_ERROR, "{}", out.stderr);
    assert!(out.stderr.contains("reducible"));
    let out = ep(&["tiny-maximals", "--group", &data("gl4_natural.grp"), "--cap-order", "1000"]);
    assert_eq!(out.code, EXIT_CAP);
}

#[test]
fn fvalue_from_dataset_and_group() {
    let out = ep(&["fvalue", "--dataset", &data("l7_wedge3.mxl")]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("class P3 | size 11811 | fix dim 1 | contribution 11811\n"));
    assert!(out.stdout.contains("f = 11811 (d = 35)\n"));
    let out = ep(&["fvalue", "--group", &data("c7_singer.grp")]);
    assert!(out.stdout.ends_with("EP [f = 7 = 2^3-1 = 7]\n"), "{}", out.stdout);
}

#[test]
fn reports_are_written_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = ep(&["audit", "--registry", &data("table12.json"), "--report", p.to_str().unwrap()]);
        assert!(out.stdout.lines().count() > 30);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let report: Value = serde_json::from_slice(&std::fs::read(&a).unwrap()).unwrap();
    assert_eq!(report["command"], "audit");
    assert_eq!(report["audit"]["rows"].as_array().unwrap().len(), 16);

    let c = dir.path().join("c.json");
    let out = ep(&["direct", "--group", &data("c15_singer.grp"), "--report", c.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_OK);
    let report: Value = serde_json::from_slice(&std::fs::read(&c).unwrap()).unwrap();
    assert_eq!(report["verdict"]["kind"], "notEP");
    assert_eq!(report["verdict"]["certificate"]["type"], "blocks");
}

#[test]
fn audit_lists_every_row_once() {
    let out = ep(&["audit", "--registry", &data("table12.json")]);
    for row in 1..=16 {
        assert!(out.stdout.contains(&format!("row {row:>2} |")), "row {row}");
    }
    assert_eq!(out.stdout.lines().filter(|l| l.contains("out-of-scope | - | out-of-scope")).count(), 5);
}

/// The shipped registry records the uniform-bound case for L_9(2) on Λ³ as
/// eliminated, which its arithmetic does not support.
#[test]
fn audit_flags_only_the_k9_uniform_bound() {
    let out = ep(&["audit", "--registry", &data("table12.json")]);
    assert_eq!(out.code, EXIT_DISCREPANCY);
    let flagged: Vec<&str> = out.stdout.lines().filter(|l| l.contains("| discrepancy")).collect();
    assert_eq!(flagged.len(), 1, "{}", out.stdout);
    assert!(flagged[0].starts_with("row  9 | d=84 | L9(2) | L(l3) | refined | inconclusive"));
    assert!(flagged[0].contains("cap recomputed as 27, recorded 21"));

    let mut reg = registry_json();
    reg["cases"].as_array_mut().unwrap().retain(|c| !(c["route"] == "refined" && c["socle"] == "L9(2)"));
    let out = audit_registry_value(&reg);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert!(out.stdout.ends_with("audit: 33 cases, 0 discrepancies, 0 data-required\n"));
}

#[test]
fn audit_detects_tampering_and_missing_data() {
    let mut reg = registry_json();
    reg["cases"][0]["alpha"] = Value::String((1u64 << 40).to_string());
    assert_eq!(audit_registry_value(&reg).code, EXIT_DISCREPANCY);

    let mut reg = registry_json();
    let cases = reg["cases"].as_array_mut().unwrap();
    cases.retain(|c| !(c["route"] == "refined" && c["socle"] == "L9(2)"));
    let sp8 = cases.iter_mut().find(|c| c["socle"] == "Sp8(2)").unwrap();
    sp8["expected"].as_object_mut().unwrap().remove("f");
    let out = audit_registry_value(&reg);
    assert_eq!(out.code, EXIT_DATA_REQUIRED, "{}", out.stdout);

    let mut reg = registry_json();
    reg["cases"].as_array_mut().unwrap().retain(|c| c["row"] != 7);
    let out = audit_registry_value(&reg);
    assert!(out.stdout.contains("row  7 | missing from registry | discrepancy"));

    let mut reg = registry_json();
    reg["cases"][0]["route"] = Value::String("guess".into());
    assert_eq!(audit_registry_value(&reg).code, EXIT_ERROR);
}

#[test]
fn max_wedge_and_tiny_maximals() {
    let out = ep(&["max-wedge", "--k", "8"]);
    assert!(out.stdout.ends_with("k=8 cap=11\n"));
    let out = ep(&["max-wedge", "--k", "8", "--r", "5"]);
    assert_eq!(out.code, EXIT_ERROR);
    let out = ep(&["tiny-maximals", "--group", &data("gl3_natural.grp")]);
    assert_eq!(out.stdout.lines().last(), Some("3 classes"));
}

#[test]
fn usage_errors() {
    assert_eq!(ep(&[]).code, EXIT_ERROR);
    assert_eq!(ep(&["fvalue"]).code, EXIT_ERROR);
    assert_eq!(ep(&["wedge-dim", "--r", "8", "--exponents", "1", "--m", "1"]).code, EXIT_ERROR);
    assert_eq!(ep(&["--help"]).code, EXIT_OK);
}
