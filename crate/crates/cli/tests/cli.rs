use std::path::Path;
use std::process::Command;

use seamlab_cli::{emit_report, run_scenario, schema_json, Format, RunReport, Scenario, ScenarioConfig};

const BIN: &str = env!("CARGO_BIN_EXE_seamlab");
const GOLDEN_HOWE: &str = include_str!("../../core/golden/howe_pmax6.csv");
const GOLDEN_HOLONOMY: &str = include_str!("../../core/golden/su2_holonomy.csv");

fn seamlab(args: &[&str], out: &Path) -> i32 {
    Command::new(BIN)
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("SEAMLAB_SEED")
        .output()
        .expect("binary runs")
        .status
        .code()
        .expect("exit code")
}

fn write_config(dir: &Path, text: &str) -> String {
    let p = dir.join("config.json");
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn small_evolve() -> ScenarioConfig {
    let mut cfg = ScenarioConfig::new(Scenario::YmhEvolve);
    cfg.lattice.dims = [2, 2, 2];
    cfg.run.steps = 40;
    cfg.run.record_every = 10;
    cfg.run.dt = 0.01;
    cfg.run.criteria = Some(vec![]);
    cfg
}

#[test]
fn published_schema_is_current() {
    assert_eq!(include_str!("../config.schema.json"), schema_json());
}

#[test]
fn shipped_configs_validate() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    let mut seen = Vec::new();
    for entry in std::fs::read_dir(dir).unwrap() {
        let text = std::fs::read_to_string(entry.unwrap().path()).unwrap();
        seen.push(ScenarioConfig::from_json(&text).unwrap().scenario);
    }
    for s in Scenario::ALL {
        assert!(seen.contains(&s), "no config for {}", s.name());
    }
}

#[test]
fn howe_table_matches_golden_bytes() {
    let out = tempfile::tempdir().unwrap();
    let cfg = write_config(out.path(), r#"{"scenario": "howe-table", "run": {"criteria": []}}"#);
    assert_eq!(seamlab(&["--config", &cfg, "--pmax", "6"], out.path()), 0);
    assert_eq!(std::fs::read_to_string(out.path().join("howe_table.csv")).unwrap(), GOLDEN_HOWE);
    assert_eq!(std::fs::read_to_string(out.path().join("su2_holonomy.csv")).unwrap(), GOLDEN_HOLONOMY);
}

#[test]
fn howe_table_json_has_every_row() {
    let out = tempfile::tempdir().unwrap();
    let cfg = write_config(out.path(), r#"{"scenario": "howe-table", "run": {"criteria": []}}"#);
    assert_eq!(seamlab(&["--config", &cfg, "--format", "json"], out.path()), 0);
    let text = std::fs::read_to_string(out.path().join("howe_table.json")).unwrap();
    let rows: Vec<serde_json::Value> = serde_json::from_str(&text).unwrap();
    assert_eq!(rows.len(), GOLDEN_HOWE.lines().count() - 1);
}

#[test]
fn evolve_with_zero_steps_reports_initial_state() {
    let out = tempfile::tempdir().unwrap();
    let mut cfg = small_evolve();
    cfg.run.steps = 0;
    cfg.run.criteria = None;
    let r = run_scenario(&cfg, out.path(), Format::Csv).unwrap();
    assert!(r.checks.is_empty() && r.pass);
    assert!(r.files.is_empty());
    assert!(r.measurements["initial_hamiltonian"] > 0.0);
    assert!(r.measurements["initial_momentum_map_norm"] < 1e-9);
}

#[test]
fn empty_report_is_valid_json() {
    let r = RunReport::new(ScenarioConfig::new(Scenario::GaussSolve));
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["version"], 1);
}

#[test]
fn report_round_trips() {
    let out = tempfile::tempdir().unwrap();
    let r = run_scenario(&small_evolve(), out.path(), Format::Json).unwrap();
    let path = out.path().join("report.json");
    emit_report(&r, &path).unwrap();
    assert_eq!(RunReport::from_json(&std::fs::read_to_string(path).unwrap()).unwrap(), r);
}

#[test]
fn same_seed_gives_identical_outputs() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let mut ra = run_scenario(&small_evolve(), a.path(), Format::Csv).unwrap();
    let mut rb = run_scenario(&small_evolve(), b.path(), Format::Csv).unwrap();
    ra.wall_time_s = 0.0;
    rb.wall_time_s = 0.0;
    assert_eq!(ra.to_json(), rb.to_json());
    for f in &ra.files {
        assert_eq!(std::fs::read(a.path().join(f)).unwrap(), std::fs::read(b.path().join(f)).unwrap());
    }
}

#[test]
fn oscillator_demo_flags_blowup_times() {
    let out = tempfile::tempdir().unwrap();
    let mut cfg = ScenarioConfig::new(Scenario::OscillatorDemo);
    cfg.run.samples = Some(200);
    cfg.run.criteria = Some(vec![]);
    let r = run_scenario(&cfg, out.path(), Format::Csv).unwrap();
    assert!(r.pass);
    let text = std::fs::read_to_string(out.path().join("oscillator_flow.csv")).unwrap();
    let flagged: Vec<f64> = text
        .lines()
        .skip(1)
        .filter(|l| l.split(',').nth(1) == Some("true"))
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(flagged.len(), 4);
    for (k, t) in flagged.iter().enumerate() {
        assert!((t - (std::f64::consts::FRAC_PI_2 + k as f64 * std::f64::consts::PI)).abs() < 1e-12);
    }
}

#[test]
fn classify_reports_seam_label() {
    let out = tempfile::tempdir().unwrap();
    let cfg = write_config(
        out.path(),
        r#"{"scenario": "ymh-classify", "lattice": {"dims": [2, 2, 2], "h": 0.5},
            "run": {"preset": "neutral-connection", "criteria": []}}"#,
    );
    assert_eq!(seamlab(&["--config", &cfg], out.path()), 0);
    let r = RunReport::from_json(&std::fs::read_to_string(out.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(r.labels["seam"], "(Z2,K)");
}

#[test]
fn invalid_configs_exit_1() {
    let out = tempfile::tempdir().unwrap();
    for text in [
        r#"{"scenario": "gauss-solve", "tolerance": {"label": -1.0}}"#,
        r#"{"scenario": "gauss-solve", "lattice": {"dims": [0, 2, 2]}}"#,
        r#"{"scenario": "ymh-evolve", "run": {"dt": 0.0}}"#,
        r#"{"scenario": "gauss-solve", "bogus": 1}"#,
        r#"{"scenario": "nope"}"#,
        r#"{"scenario": "gauss-solve", "run": {"criteria": [15]}}"#,
    ] {
        let cfg = write_config(out.path(), text);
        assert_eq!(seamlab(&["--config", &cfg], &out.path().join("o")), 1, "{text}");
    }
    assert_eq!(seamlab(&["--scenario", "unknown"], out.path()), 1);
}

#[test]
fn failed_check_exits_3() {
    let out = tempfile::tempdir().unwrap();
    let cfg = write_config(
        out.path(),
        r#"{"scenario": "gauss-solve", "lattice": {"dims": [2, 2, 2]}, "tolerance": {"gauss_residual": 1e-300},
            "run": {"criteria": []}}"#,
    );
    assert_eq!(seamlab(&["--config", &cfg], &out.path().join("o")), 3);
}

#[test]
fn unwritable_output_exits_2() {
    let out = tempfile::tempdir().unwrap();
    let blocker = out.path().join("file");
    std::fs::write(&blocker, "x").unwrap();
    assert_eq!(seamlab(&["--scenario", "howe-table"], &blocker), 2);
}

#[test]
fn seed_comes_from_environment() {
    let out = tempfile::tempdir().unwrap();
    let cfg = write_config(out.path(), r#"{"scenario": "gauss-solve", "lattice": {"dims": [2, 2, 2]}, "run": {"criteria": []}}"#);
    let status = Command::new(BIN)
        .args(["--config", &cfg, "--out"])
        .arg(out.path())
        .env("SEAMLAB_SEED", "42")
        .output()
        .unwrap()
        .status;
    assert!(status.success());
    let r = RunReport::from_json(&std::fs::read_to_string(out.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(r.config.run.seed, 42);
}
