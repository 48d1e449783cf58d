//! Scenario configuration: JSON with every block optional except the
//! scenario name.

use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

use seamlab::lattice::Lattice;
use seamlab::liealg::Couplings;
use seamlab::ymh::Preset;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    OscillatorDemo,
    NormalformCheck,
    YmhEvolve,
    YmhClassify,
    GaussSolve,
    HoweTable,
    HodgeSelftest,
}

impl Scenario {
    pub const ALL: [Scenario; 7] = [
        Scenario::OscillatorDemo,
        Scenario::NormalformCheck,
        Scenario::YmhEvolve,
        Scenario::YmhClassify,
        Scenario::GaussSolve,
        Scenario::HoweTable,
        Scenario::HodgeSelftest,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Scenario::OscillatorDemo => "oscillator-demo",
            Scenario::NormalformCheck => "normalform-check",
            Scenario::YmhEvolve => "ymh-evolve",
            Scenario::YmhClassify => "ymh-classify",
            Scenario::GaussSolve => "gauss-solve",
            Scenario::HoweTable => "howe-table",
            Scenario::HodgeSelftest => "hodge-selftest",
        }
    }

    /// Acceptance criteria run after the scenario's own work unless the
    /// config lists its own.
    pub fn default_criteria(&self) -> &'static [usize] {
        match self {
            Scenario::OscillatorDemo => &[1, 2, 3],
            Scenario::NormalformCheck => &[4],
            Scenario::HodgeSelftest => &[5],
            Scenario::YmhEvolve => &[6, 7, 14],
            Scenario::YmhClassify => &[8, 9, 11, 13],
            Scenario::GaussSolve => &[10],
            Scenario::HoweTable => &[12],
        }
    }
}

impl std::str::FromStr for Scenario {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Scenario::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| CliError::Config(format!("unknown scenario {s:?}")))
    }
}

/// Initial-condition presets of the gauge simulator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
#[serde(rename_all = "kebab-case")]
pub enum PresetName {
    Vacuum,
    SingularStratum,
    NeutralConnection,
    Generic,
    HomogeneousRandom,
}

impl From<PresetName> for Preset {
    fn from(p: PresetName) -> Self {
        match p {
            PresetName::Vacuum => Preset::Vacuum,
            PresetName::SingularStratum => Preset::SingularStratum,
            PresetName::NeutralConnection => Preset::NeutralConnection,
            PresetName::Generic => Preset::Generic,
            PresetName::HomogeneousRandom => Preset::HomogeneousRandom,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields, default)]
pub struct LatticeBlock {
    pub dims: [usize; 3],
    pub h: f64,
}

impl Default for LatticeBlock {
    fn default() -> Self {
        Self { dims: [4, 4, 4], h: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields, default)]
pub struct PhysicsBlock {
    pub g: f64,
    pub gp: f64,
    pub lambda_h: f64,
    pub nu_h: f64,
    /// Uniform lapse replacing the preset's own when set.
    pub lapse: Option<f64>,
}

impl Default for PhysicsBlock {
    fn default() -> Self {
        let c = Couplings::default();
        Self { g: c.g, gp: c.gp, lambda_h: c.lambda_h, nu_h: c.nu_h, lapse: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields, default)]
pub struct RunBlock {
    pub dt: f64,
    pub steps: usize,
    pub seed: u64,
    pub preset: PresetName,
    /// Sample count for the sampled checks; each check has its own default.
    pub samples: Option<usize>,
    /// Rows of the time series are written every this many steps.
    pub record_every: usize,
    /// Largest Goursat parameter for `howe-table`.
    pub pmax: u32,
    /// Acceptance criteria to run; defaults depend on the scenario.
    pub criteria: Option<Vec<usize>>,
}

impl Default for RunBlock {
    fn default() -> Self {
        Self {
            dt: 1e-3,
            steps: 10_000,
            seed: 0,
            preset: PresetName::Generic,
            samples: None,
            record_every: 100,
            pmax: 6,
            criteria: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields, default)]
pub struct ToleranceBlock {
    /// Sup-norm threshold for stratum labels.
    pub label: f64,
    /// Bound on `‖J‖` accepted as the constraint set.
    pub constraint: f64,
    /// Bound on `‖J(t) − J(0)‖ / max(‖J(0)‖, 1)` during evolution.
    pub momentum_drift: f64,
    /// Bound on the Picard residual of the Gauß split.
    pub gauss_residual: f64,
}

impl Default for ToleranceBlock {
    fn default() -> Self {
        Self { label: 1e-8, constraint: 1e-9, momentum_drift: 1e-9, gauss_residual: 1e-9 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, JsonSchema)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    #[serde(default)]
    pub lattice: LatticeBlock,
    #[serde(default)]
    pub physics: PhysicsBlock,
    #[serde(default)]
    pub run: RunBlock,
    #[serde(default)]
    pub tolerance: ToleranceBlock,
}

impl ScenarioConfig {
    pub fn new(scenario: Scenario) -> Self {
        Self {
            scenario,
            lattice: LatticeBlock::default(),
            physics: PhysicsBlock::default(),
            run: RunBlock::default(),
            tolerance: ToleranceBlock::default(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Config(m));
        let t = &self.tolerance;
        for (name, v) in [
            ("label", t.label),
            ("constraint", t.constraint),
            ("momentum_drift", t.momentum_drift),
            ("gauss_residual", t.gauss_residual),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return bad(format!("tolerance.{name} must be positive, got {v}"));
            }
        }
        self.lattice()?;
        self.couplings()?;
        if let Some(l) = self.physics.lapse {
            if !(l > 0.0 && l.is_finite()) {
                return bad(format!("physics.lapse must be positive, got {l}"));
            }
        }
        if self.scenario == Scenario::YmhEvolve && !(self.run.dt > 0.0 && self.run.dt.is_finite()) {
            return bad(format!("run.dt must be positive, got {}", self.run.dt));
        }
        if self.run.record_every == 0 {
            return bad("run.record_every must be at least 1".into());
        }
        if self.run.pmax == 0 {
            return bad("run.pmax must be at least 1".into());
        }
        if self.run.samples == Some(0) {
            return bad("run.samples must be at least 1".into());
        }
        if let Some(c) = self.criteria().iter().find(|c| !(1..=seamlab::checks::CRITERIA.len()).contains(*c)) {
            return bad(format!("no acceptance criterion {c}"));
        }
        Ok(())
    }

    pub fn lattice(&self) -> Result<Lattice, CliError> {
        Lattice::new(self.lattice.dims, self.lattice.h).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn couplings(&self) -> Result<Couplings, CliError> {
        let p = &self.physics;
        Couplings::new(p.g, p.gp, p.lambda_h, p.nu_h).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn criteria(&self) -> Vec<usize> {
        self.run.criteria.clone().unwrap_or_else(|| self.scenario.default_criteria().to_vec())
    }
}

/// JSON schema of [`ScenarioConfig`], pretty-printed with a trailing newline.
pub fn schema_json() -> String {
    let schema = schemars::schema_for!(ScenarioConfig);
    serde_json::to_string_pretty(&schema).expect("schema serializes") + "\n"
}
