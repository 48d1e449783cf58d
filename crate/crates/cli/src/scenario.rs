//! Scenario execution. Each scenario does its own work, writes its data
//! files, then runs its acceptance criteria.

use std::f64::consts::FRAC_PI_2;
use std::path::Path;

use serde::Serialize;

use seamlab::checks::{self, Check};
use seamlab::oscillator::{cone_flow, cotangent_flow, flow_constants, imap, CotangentHalfLine, FlowState};
use seamlab::strata::{
    centralizer_check, classify_config, classify_phase, goursat_enumerate, howe_csv, howe_json, seam_label,
    stratum_defect, su2_holonomy_csv, su2_holonomy_table,
};
use seamlab::ymh::{build_preset, gauss_split, hamiltonian, momentum_map, step_leapfrog, YmhState};

use crate::config::{Scenario, ScenarioConfig};
use crate::report::RunReport;
use crate::{CliError, Format};

/// Runs `cfg`, writing data files into `out`. The report is not written.
pub fn run_scenario(cfg: &ScenarioConfig, out: &Path, format: Format) -> Result<RunReport, CliError> {
    cfg.validate()?;
    std::fs::create_dir_all(out).map_err(|e| CliError::Io(format!("{}: {e}", out.display())))?;
    let start = std::time::Instant::now();
    let mut r = RunReport::new(cfg.clone());
    let seed = cfg.run.seed;
    let mut run_criteria = true;
    match cfg.scenario {
        Scenario::OscillatorDemo => oscillator_demo(cfg, out, format, &mut r)?,
        Scenario::NormalformCheck => {
            for c in checks::normalform_identity(cfg.run.samples.unwrap_or(1_000), seed)? {
                r.push(c);
            }
        }
        Scenario::HodgeSelftest => {
            for c in checks::hodge_selftest(cfg.lattice()?, seed)? {
                r.push(c);
            }
        }
        Scenario::YmhEvolve => run_criteria = ymh_evolve(cfg, out, format, &mut r)?,
        Scenario::YmhClassify => ymh_classify(cfg, out, format, &mut r)?,
        Scenario::GaussSolve => gauss_solve(cfg, out, format, &mut r)?,
        Scenario::HoweTable => howe_table(cfg, out, format, &mut r)?,
    }
    if run_criteria {
        for id in cfg.criteria() {
            for c in checks::criterion_seeded(id, seed.wrapping_add(20_240 + id as u64))? {
                r.push(Check { name: format!("criterion_{id}.{}", c.name), ..c });
            }
        }
    }
    r.wall_time_s = start.elapsed().as_secs_f64();
    Ok(r)
}

fn write_file(out: &Path, name: &str, text: &str, r: &mut RunReport) -> Result<(), CliError> {
    let path = out.join(name);
    std::fs::write(&path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    r.files.push(name.into());
    Ok(())
}

fn write_rows<T: Serialize>(out: &Path, stem: &str, format: Format, rows: &[T], r: &mut RunReport) -> Result<(), CliError> {
    let text = match format {
        Format::Json => serde_json::to_string_pretty(rows).map_err(|e| CliError::Io(e.to_string()))? + "\n",
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in rows {
                w.serialize(row).map_err(|e| CliError::Io(e.to_string()))?;
            }
            String::from_utf8(w.into_inner().map_err(|e| CliError::Io(e.to_string()))?).expect("csv is utf-8")
        }
    };
    write_file(out, &format!("{stem}.{}", format.extension()), &text, r)
}

fn preset_state(cfg: &ScenarioConfig) -> Result<YmhState, CliError> {
    let mut s = build_preset(cfg.run.preset.into(), cfg.lattice()?, cfg.couplings()?, cfg.run.seed)?;
    if let Some(l) = cfg.physics.lapse {
        s.lapse.data.iter_mut().for_each(|x| *x = l);
    }
    Ok(s)
}

#[derive(Serialize)]
struct FlowRow {
    t: f64,
    blowup: bool,
    qbar: Option<f64>,
    pbar: Option<f64>,
    h: f64,
    e_plus: f64,
    e_minus: f64,
}

/// Four periods of the reduced flow from `(q̄, p̄) = (1, 0)` on a grid that
/// hits every blow-up time `t_c = π/2 + kπ`.
fn oscillator_demo(cfg: &ScenarioConfig, out: &Path, format: Format, r: &mut RunReport) -> Result<(), CliError> {
    let y0 = CotangentHalfLine::new(1.0, 0.0)?;
    let (h0, t0) = flow_constants(&y0);
    let c0 = imap(&y0)?;
    let per_quarter = 25;
    let mut rows = Vec::new();
    let mut misflagged = 0;
    for j in 0..=8 * per_quarter {
        let t = j as f64 * FRAC_PI_2 / per_quarter as f64;
        let c = cone_flow(t, &c0);
        let state = cotangent_flow(t, h0, t0)?;
        let at_tc = j % (2 * per_quarter) == per_quarter;
        if state.is_blowup() != at_tc {
            misflagged += 1;
        }
        let (qbar, pbar) = match state {
            FlowState::Regular(y) => (Some(y.qbar), Some(y.pbar)),
            FlowState::Blowup => (None, None),
        };
        rows.push(FlowRow { t, blowup: state.is_blowup(), qbar, pbar, h: c.h, e_plus: c.e_plus, e_minus: c.e_minus });
    }
    write_rows(out, "oscillator_flow", format, &rows, r)?;
    r.push(Check::failures("blowup_flag_mismatches", misflagged));
    let n = cfg.run.samples;
    let seed = cfg.run.seed;
    let mut cs = checks::oscillator_cone(n.unwrap_or(10_000), seed);
    cs.extend(checks::oscillator_brackets(n.unwrap_or(1_000), seed));
    cs.extend(checks::oscillator_diagram(n.unwrap_or(10_000), seed)?);
    cs.into_iter().for_each(|c| r.push(c));
    Ok(())
}

#[derive(Serialize)]
struct EvolutionRow {
    step: usize,
    t: f64,
    hamiltonian: f64,
    momentum_map_norm: f64,
    stratum_defect: f64,
}

/// Leapfrog evolution of the configured preset. Returns whether the
/// acceptance criteria should run, which they do not for `steps = 0`.
fn ymh_evolve(cfg: &ScenarioConfig, out: &Path, format: Format, r: &mut RunReport) -> Result<bool, CliError> {
    let mut s = preset_state(cfg)?;
    let h0 = hamiltonian(&s);
    let j0 = momentum_map(&s);
    r.measurements.insert("initial_hamiltonian".into(), h0);
    r.measurements.insert("initial_momentum_map_norm".into(), j0.norm());
    if cfg.run.steps == 0 {
        return Ok(false);
    }
    let row = |step: usize, s: &YmhState| EvolutionRow {
        step,
        t: step as f64 * cfg.run.dt,
        hamiltonian: hamiltonian(s),
        momentum_map_norm: momentum_map(s).norm(),
        stratum_defect: stratum_defect(s),
    };
    let mut rows = vec![row(0, &s)];
    let mut drift: f64 = 0.0;
    let mut energy: f64 = 0.0;
    for step in 1..=cfg.run.steps {
        s = step_leapfrog(&s, cfg.run.dt)?;
        if step % cfg.run.record_every == 0 || step == cfg.run.steps {
            let rw = row(step, &s);
            drift = drift.max(momentum_map(&s).sub(&j0)?.norm());
            energy = energy.max((rw.hamiltonian - h0).abs());
            rows.push(rw);
        }
    }
    write_rows(out, "evolution", format, &rows, r)?;
    r.measurements.insert("final_hamiltonian".into(), hamiltonian(&s));
    r.measurements.insert("max_energy_error".into(), energy);
    r.push(Check::below("momentum_map_drift", drift / j0.norm().max(1.0), cfg.tolerance.momentum_drift));
    Ok(true)
}

#[derive(Serialize)]
struct LabelRow {
    key: String,
    value: String,
}

fn ymh_classify(cfg: &ScenarioConfig, out: &Path, format: Format, r: &mut RunReport) -> Result<(), CliError> {
    let s = preset_state(cfg)?;
    let tol = cfg.tolerance.label;
    r.labels.insert("configuration".into(), classify_config(&s, tol)?.to_string());
    r.labels.insert("phase".into(), classify_phase(&s, tol)?.to_string());
    r.labels.insert("seam".into(), seam_label(&s, cfg.tolerance.constraint, tol)?.to_string());
    r.measurements.insert("momentum_map_sup".into(), momentum_map(&s).sup_norm());
    r.measurements.insert("stratum_defect".into(), stratum_defect(&s));
    let rows: Vec<LabelRow> = r.labels.iter().map(|(k, v)| LabelRow { key: k.clone(), value: v.clone() }).collect();
    write_rows(out, "classification", format, &rows, r)
}

#[derive(Serialize)]
struct SplitRow {
    iteration: usize,
    residual: f64,
}

fn gauss_solve(cfg: &ScenarioConfig, out: &Path, format: Format, r: &mut RunReport) -> Result<(), CliError> {
    let s = preset_state(cfg)?;
    let sp = gauss_split(&s)?;
    let rows: Vec<SplitRow> = sp.trace.iter().enumerate().map(|(i, &res)| SplitRow { iteration: i + 1, residual: res }).collect();
    write_rows(out, "gauss_split", format, &rows, r)?;
    for (k, v) in ["c1", "c2", "c3", "c0"].iter().zip(sp.stab_part.to_array()) {
        r.measurements.insert(format!("stab_part_{k}"), v);
    }
    r.measurements.insert("nu_m_norm".into(), sp.nu_m.norm());
    r.push(Check::below("picard_residual", sp.residual, cfg.tolerance.gauss_residual));
    r.push(Check::at_most("picard_iterations", sp.iterations() as f64, seamlab::ymh::PICARD_MAX_ITER as f64));
    Ok(())
}

fn howe_table(cfg: &ScenarioConfig, out: &Path, format: Format, r: &mut RunReport) -> Result<(), CliError> {
    let rows = goursat_enumerate(cfg.run.pmax)?;
    let holo = su2_holonomy_table();
    match format {
        Format::Csv => {
            write_file(out, "howe_table.csv", &howe_csv(&rows), r)?;
            write_file(out, "su2_holonomy.csv", &su2_holonomy_csv(&holo), r)?;
        }
        Format::Json => {
            write_file(out, "howe_table.json", &howe_json(&rows), r)?;
            let text = serde_json::to_string_pretty(&holo).map_err(|e| CliError::Io(e.to_string()))? + "\n";
            write_file(out, "su2_holonomy.json", &text, r)?;
        }
    }
    r.measurements.insert("howe_rows".into(), rows.len() as f64);
    let samples = cfg.run.samples.unwrap_or(24);
    let failed = rows
        .iter()
        .filter(|row| !centralizer_check(row.symbol, &row.quintuple.unwrap_or_else(|| row.symbol.representative()), samples))
        .count();
    r.push(Check::failures("centralizer_check_failures", failed));
    Ok(())
}
