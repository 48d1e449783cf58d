use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use seamlab_cli::{emit_report, run_scenario, schema_json, CliError, Format, Scenario, ScenarioConfig, EXIT_CHECK_FAILURE};

/// Run a seamlab scenario and write a JSON report plus its data files.
///
/// Every flag can also be set through an environment variable with the
/// `SEAMLAB_` prefix; flags take precedence over variables, and both over
/// the config file.
#[derive(Parser, Debug)]
#[command(name = "seamlab", version)]
struct Args {
    /// Scenario name; overrides the config file.
    #[arg(long, env = "SEAMLAB_SCENARIO")]
    scenario: Option<String>,
    /// JSON scenario config.
    #[arg(long, env = "SEAMLAB_CONFIG")]
    config: Option<PathBuf>,
    /// Output directory for the report and data files.
    #[arg(long, env = "SEAMLAB_OUT", default_value = "out")]
    out: PathBuf,
    /// Seed; overrides the config file.
    #[arg(long, env = "SEAMLAB_SEED")]
    seed: Option<u64>,
    /// Format of the data files.
    #[arg(long, env = "SEAMLAB_FORMAT", value_enum, default_value = "csv")]
    format: Format,
    /// Number of time steps; overrides the config file.
    #[arg(long, env = "SEAMLAB_STEPS")]
    steps: Option<usize>,
    /// Largest Goursat parameter for `howe-table`; overrides the config file.
    #[arg(long, env = "SEAMLAB_PMAX")]
    pmax: Option<u32>,
    /// Print the config JSON schema and exit.
    #[arg(long)]
    print_schema: bool,
}

fn load(args: &Args) -> Result<ScenarioConfig, CliError> {
    let mut value = match &args.config {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?;
            serde_json::from_str::<serde_json::Value>(&text).map_err(|e| CliError::Config(e.to_string()))?
        }
        None => serde_json::json!({}),
    };
    let obj = value.as_object_mut().ok_or_else(|| CliError::Config("config must be a JSON object".into()))?;
    if let Some(s) = &args.scenario {
        let s: Scenario = s.parse()?;
        obj.insert("scenario".into(), serde_json::to_value(s).expect("scenario serializes"));
    }
    let mut cfg: ScenarioConfig = serde_json::from_value(value).map_err(|e| CliError::Config(e.to_string()))?;
    if let Some(seed) = args.seed {
        cfg.run.seed = seed;
    }
    if let Some(steps) = args.steps {
        cfg.run.steps = steps;
    }
    if let Some(pmax) = args.pmax {
        cfg.run.pmax = pmax;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(args: &Args) -> Result<bool, CliError> {
    let cfg = load(args)?;
    let report = run_scenario(&cfg, &args.out, args.format)?;
    emit_report(&report, &args.out.join("report.json"))?;
    for c in &report.checks {
        println!("{} {:<48} {:>12.3e} threshold {:.1e}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.measured, c.threshold);
    }
    for (k, v) in &report.labels {
        println!("LABEL {k} {v}");
    }
    for (k, v) in &report.measurements {
        println!("VALUE {k} {v:e}");
    }
    println!("{} {} in {:.2}s", cfg.scenario.name(), if report.pass { "passed" } else { "failed" }, report.wall_time_s);
    Ok(report.pass)
}

fn main() -> ExitCode {
    let args = Args::parse();
    if args.print_schema {
        print!("{}", schema_json());
        return ExitCode::SUCCESS;
    }
    match run(&args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_CHECK_FAILURE),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
