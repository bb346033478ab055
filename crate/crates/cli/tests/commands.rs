use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use mlsfr_cli::commands::{run_alloc, run_design, run_fig5, run_fig6, run_pairing};
use mlsfr_cli::output::{render, Format};
use mlsfr_cli::scenario::Scenario;
use mlsfr_core::allocator::Pattern;

fn mlsfr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mlsfr"))
        .args(args)
        .output()
        .unwrap()
}

fn write_scenario(dir: &Path, json: &str) -> String {
    let p = dir.join("scenario.json");
    fs::write(&p, json).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn fig5_curves() {
    let r = run_fig5(&Scenario::default()).unwrap();
    assert_eq!(r.curves.len(), 4);
    for c in &r.curves {
        assert_eq!(c.points.len(), 121);
        assert_eq!(c.points[0].gamma_db, -30.0);
        assert_eq!(c.points[120].gamma_db, 0.0);
        assert!(c.points.windows(2).all(|w| w[0].eta > w[1].eta));
    }
    let edge = &r.curves[3];
    assert_eq!(edge.beta0_squared, 1.0);
    assert!((edge.points[120].eta - 0.51).abs() < 0.02);
    let at17 = edge.points.iter().find(|p| p.gamma_db == -17.0).unwrap();
    assert!((at17.eta / edge.plateau - 0.90).abs() < 0.01);
}

#[test]
fn fig5_csv_layout() {
    let out = mlsfr(&["fig5"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("beta0_squared,gamma_db,eta"));
    assert_eq!(lines.count(), 4 * 121);
    assert!(text.contains("\n1,0,0.509"));
}

#[test]
fn fig6_points() {
    let r = run_fig6(&Scenario::default()).unwrap();
    let curve = |scheme: &str, level: usize| {
        r.curves
            .iter()
            .find(|c| c.scheme == scheme && c.level == level)
            .unwrap()
    };
    assert_eq!(curve("reuse-1", 1).points.len(), 20);
    let edge = |scheme, level| curve(scheme, level).points.last().unwrap().eta;
    assert!((edge("reuse-1", 1) - 0.51).abs() < 0.02);
    assert!((edge("SFR-8", 1) - 2.54).abs() < 0.03);
    let inner = r
        .dots
        .iter()
        .find(|d| d.scheme == "SFR-8" && d.level == 8 && d.beta0 == 0.125)
        .unwrap();
    assert!((inner.eta - 6.0).abs() < 0.1);
}

#[test]
fn design_rounds_to_table() {
    let r = run_design(&Scenario::default()).unwrap();
    assert!((r.anchors[0].gamma_db + 17.0).abs() <= 0.5);
    assert_eq!(r.gamma_min_db, -17.0);
    assert_eq!(r.levels.len(), 8);
    assert_eq!(r.subband_gammas_db.len(), 4);

    let one = Scenario::from_json(r#"{"design_subbands": 1}"#).unwrap();
    let r = run_design(&one).unwrap();
    assert_eq!(r.levels.len(), 2);
    assert_eq!(r.scheme, "SFR-2");
}

#[test]
fn alloc_serves_every_default_request() {
    let r = run_alloc(&Scenario::default()).unwrap();
    assert!(r.assignments.iter().all(|a| a.satisfied()));
    let csv = String::from_utf8(render(&r, Format::Csv).unwrap()).unwrap();
    assert!(csv.starts_with("ue,beta0,demand,level,status,band_list\n"));
}

#[test]
fn alloc_reports_denials() {
    let s = Scenario::from_json(
        r#"{"requests": [{"beta0": 1.0, "demand": 0.5}], "coverage_margin": 1.0}"#,
    )
    .unwrap();
    let r = run_alloc(&s).unwrap();
    let csv = String::from_utf8(render(&r, Format::Csv).unwrap()).unwrap();
    assert!(csv.contains("insufficient resources"));
}

#[test]
fn pairing_picks_assortative() {
    let r = run_pairing(&Scenario::default()).unwrap();
    assert_eq!(r.comparison.better, Some(Pattern::Swapped));
    assert_eq!(r.random_success[0].probability, 0.5);
    assert_eq!(r.random_success[1].probability, 1.0 / 64.0);
}

#[test]
fn table4_reruns_are_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let out = mlsfr(&["table4", "--format", "csv", "--out", p.to_str().unwrap()]);
        assert!(out.status.success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn scenario_out_is_used_when_flag_missing() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("design.json");
    let json = format!(r#"{{"out": {:?}}}"#, target.to_str().unwrap());
    let scenario = write_scenario(dir.path(), &json);
    let out = mlsfr(&["design", "--scenario", &scenario]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_slice(&fs::read(target).unwrap()).unwrap();
    assert_eq!(v["gamma_min_db"], -17.0);
}

#[test]
fn unwritable_output_fails_with_one_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("missing").join("x.csv");
    let out = mlsfr(&["fig5", "--out", bad.to_str().unwrap()]);
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.starts_with("error: "));
    assert_eq!(err.trim_end().lines().count(), 1);
}

#[test]
fn bad_scenario_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = write_scenario(dir.path(), r#"{"solver": "nope"}"#);
    let out = mlsfr(&["table4", "--scenario", &scenario]);
    assert!(!out.status.success());
    let scenario = write_scenario(dir.path(), r#"{"bogus": 1}"#);
    assert!(!mlsfr(&["pairing", "--scenario", &scenario])
        .status
        .success());
}
