//! Hardy's two-interferometer experiment on positron ⊗ electron ⊗ photon
//! (dimensions 3 · 3 · 2 = 18), with the annihilation at the overlap point
//! generalized to a partial interaction of strength `p`.
//!
//! Particle basis order is (x, y, 0) where `0` is the absent particle;
//! photon basis order is (no photon, photon pair).

mod analytic;
mod detection;
mod optics;
mod stages;

pub use analytic::{
    dark_probability, f_kernel, matter_purity_analytic, stage3_irreality_analytic,
    stage3_local_irreality_analytic, stage3_rbn_analytic, stage4_asymptotics, PurityEntanglement,
    Stage4Asymptotics,
};
pub use detection::{detection_distribution, DetectionDistribution};
pub use optics::{annihilation, beam_splitter, mirror};
pub use stages::{path_observable, stage_report, stage_state, StageReport};

use std::f64::consts::TAU;

use crate::error::{invalid, Result};
use crate::qstate::{CompositeSpace, StateVector};

pub const POSITRON: &str = "positron";
pub const ELECTRON: &str = "electron";
pub const PHOTON: &str = "photon";

/// Particle basis indices.
pub const X: usize = 0;
pub const Y: usize = 1;
pub const VACUUM: usize = 2;
/// Photon basis indices.
pub const NO_PHOTON: usize = 0;
pub const PHOTON_PAIR: usize = 1;

/// The 18-dimensional space, ordered (positron, electron, photon).
pub fn hardy_space() -> CompositeSpace {
    CompositeSpace::from_dims([(POSITRON, 3), (ELECTRON, 3), (PHOTON, 2)])
        .expect("fixed labels are distinct")
}

/// The 9-dimensional matter space (positron, electron).
pub fn matter_space() -> CompositeSpace {
    CompositeSpace::from_dims([(POSITRON, 3), (ELECTRON, 3)]).expect("fixed labels are distinct")
}

/// `|positron, electron, photon⟩` basis ket.
pub fn hardy_ket(positron: usize, electron: usize, photon: usize) -> StateVector {
    StateVector::basis(hardy_space(), &[positron, electron, photon]).expect("digits in range")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Positron,
    Electron,
}

impl Side {
    pub fn label(self) -> &'static str {
        match self {
            Side::Positron => POSITRON,
            Side::Electron => ELECTRON,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stage {
    /// Before the first beam-splitters.
    One,
    /// Between the first beam-splitters and the overlap point.
    Two,
    /// Between the overlap point and the mirrors.
    Three,
    /// After the final beam-splitters.
    Four,
}

impl Stage {
    pub const ALL: [Stage; 4] = [Stage::One, Stage::Two, Stage::Three, Stage::Four];

    pub fn number(self) -> u8 {
        match self {
            Stage::One => 1,
            Stage::Two => 2,
            Stage::Three => 3,
            Stage::Four => 4,
        }
    }
}

impl TryFrom<u8> for Stage {
    type Error = crate::Error;

    fn try_from(k: u8) -> Result<Self> {
        match k {
            1 => Ok(Stage::One),
            2 => Ok(Stage::Two),
            3 => Ok(Stage::Three),
            4 => Ok(Stage::Four),
            _ => invalid(format!("stage must be 1..=4, got {k}")),
        }
    }
}

/// Annihilation probability `p` and interaction phase `φ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HardyConfig {
    p: f64,
    phi: f64,
}

impl HardyConfig {
    /// `phi` is reduced into [0, 2π).
    pub fn new(p: f64, phi: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return invalid(format!("annihilation probability must lie in [0, 1], got {p}"));
        }
        if !phi.is_finite() {
            return invalid(format!("phase must be finite, got {phi}"));
        }
        Ok(Self {
            p,
            phi: phi.rem_euclid(TAU),
        })
    }

    pub fn with_p(p: f64) -> Result<Self> {
        Self::new(p, 0.0)
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Survival amplitude √(1−p).
    pub fn alpha(&self) -> f64 {
        (1.0 - self.p).sqrt()
    }

    /// Annihilation amplitude √p·e^{iφ}.
    pub fn beta(&self) -> num_complex::Complex64 {
        num_complex::Complex64::from_polar(self.p.sqrt(), self.phi)
    }
}

/// `steps` uniform points on `[min, max]`, both endpoints included exactly.
pub fn uniform_grid(min: f64, max: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => vec![],
        1 => vec![min],
        _ => (0..steps)
            .map(|i| {
                if i == steps - 1 {
                    max
                } else {
                    min + (max - min) * i as f64 / (steps - 1) as f64
                }
            })
            .collect(),
    }
}
