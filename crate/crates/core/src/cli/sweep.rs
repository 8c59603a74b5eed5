use rayon::prelude::*;

use super::format::{Field, Record};
use crate::error::{invalid, Result};
use crate::hardy::{detection_distribution, stage_report, uniform_grid, HardyConfig, Stage};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StageSelection {
    One(Stage),
    All,
}

impl StageSelection {
    pub fn stages(&self) -> Vec<Stage> {
        match self {
            StageSelection::One(s) => vec![*s],
            StageSelection::All => Stage::ALL.to_vec(),
        }
    }
}

impl std::str::FromStr for StageSelection {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(StageSelection::All);
        }
        let k: u8 = s
            .parse()
            .map_err(|_| format!("stage must be 1, 2, 3, 4 or all, got '{s}'"))?;
        Stage::try_from(k)
            .map(StageSelection::One)
            .map_err(|e| e.to_string())
    }
}

/// A uniform grid over the annihilation probability.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub p_min: f64,
    pub p_max: f64,
    pub steps: usize,
    pub stage: StageSelection,
    pub phi: f64,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            p_min: 0.0,
            p_max: 1.0,
            steps: 201,
            stage: StageSelection::All,
            phi: 0.0,
        }
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        let in_range = |x: f64| (0.0..=1.0).contains(&x);
        if !in_range(self.p_min) || !in_range(self.p_max) {
            return invalid("p-min and p-max must lie in [0, 1]");
        }
        if self.p_min > self.p_max {
            return invalid("p-min must not exceed p-max");
        }
        if self.steps < 2 {
            return invalid("steps must be at least 2");
        }
        if !self.phi.is_finite() {
            return invalid("phi must be finite");
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<f64> {
        uniform_grid(self.p_min, self.p_max, self.steps)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub p: f64,
    pub stage: u8,
    pub irreality_plus: f64,
    pub irreality_minus: f64,
    pub local_irreality_plus: f64,
    pub local_irreality_minus: f64,
    pub rbn: f64,
    pub purity: f64,
    pub linear_entropy: f64,
    pub p_dark: f64,
    pub p_at_least_one_dark: f64,
}

impl Record for SweepRecord {
    const COLUMNS: &'static [&'static str] = &[
        "p",
        "stage",
        "irreality_plus",
        "irreality_minus",
        "local_irreality_plus",
        "local_irreality_minus",
        "rbn",
        "purity",
        "linear_entropy",
        "p_dark",
        "p_at_least_one_dark",
    ];

    fn fields(&self) -> Vec<Field> {
        vec![
            Field::Real(self.p),
            Field::Int(self.stage),
            Field::Real(self.irreality_plus),
            Field::Real(self.irreality_minus),
            Field::Real(self.local_irreality_plus),
            Field::Real(self.local_irreality_minus),
            Field::Real(self.rbn),
            Field::Real(self.purity),
            Field::Real(self.linear_entropy),
            Field::Real(self.p_dark),
            Field::Real(self.p_at_least_one_dark),
        ]
    }
}

pub fn sweep_record(stage: Stage, config: &HardyConfig) -> Result<SweepRecord> {
    let report = stage_report(stage, config)?;
    let detection = detection_distribution(config)?;
    Ok(SweepRecord {
        p: config.p(),
        stage: stage.number(),
        irreality_plus: report.irreality_plus,
        irreality_minus: report.irreality_minus,
        local_irreality_plus: report.local_irreality_plus,
        local_irreality_minus: report.local_irreality_minus,
        rbn: report.rbn,
        purity: report.matter_purity,
        linear_entropy: report.matter_linear_entropy,
        p_dark: detection.both_dark(),
        p_at_least_one_dark: detection.at_least_one_dark(),
    })
}

/// Records ordered by `p`, then by stage. Evaluated in parallel.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRecord>> {
    spec.validate()?;
    let stages = spec.stage.stages();
    let jobs: Vec<(f64, Stage)> = spec
        .grid()
        .into_iter()
        .flat_map(|p| stages.iter().map(move |&s| (p, s)))
        .collect();
    jobs.par_iter()
        .map(|&(p, stage)| sweep_record(stage, &HardyConfig::new(p, spec.phi)?))
        .collect()
}
