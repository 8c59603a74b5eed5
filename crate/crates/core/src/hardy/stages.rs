use super::{
    annihilation, beam_splitter, hardy_ket, mirror, HardyConfig, Side, Stage, ELECTRON, POSITRON,
    X, Y,
};
use crate::error::Result;
use crate::qstate::{
    linear_entropy, partial_trace, purity, DensityOperator, StateVector, Subsystem,
};
use crate::realism::{contextual_rbn, irreality, local_irreality, ProjectiveObservable};

/// Global state `|Ψ_k⟩` at the given stage. Every stage after the first is
/// obtained by applying the optical unitaries to the previous one.
pub fn stage_state(stage: Stage, config: &HardyConfig) -> Result<StateVector> {
    let psi1 = hardy_ket(Y, X, 0);
    if stage == Stage::One {
        return Ok(psi1);
    }
    let splitters = beam_splitter(Side::Positron) * beam_splitter(Side::Electron);
    let psi2 = psi1.evolve(&splitters)?;
    if stage == Stage::Two {
        return Ok(psi2);
    }
    let psi3 = psi2.evolve(&annihilation(config))?;
    if stage == Stage::Three {
        return Ok(psi3);
    }
    let mirrors = mirror(Side::Positron) * mirror(Side::Electron);
    psi3.evolve(&(splitters * mirrors))
}

/// Which-path observable on one particle: projectors onto x, y and the
/// vacuum.
pub fn path_observable(side: Side) -> ProjectiveObservable {
    ProjectiveObservable::computational(Subsystem::new(side.label(), 3))
}

/// Realism metrics of one stage, all in nats.
#[derive(Debug, Clone)]
pub struct StageReport {
    pub stage: Stage,
    pub config: HardyConfig,
    pub state: StateVector,
    /// Positron–electron state with the photon traced out.
    pub matter: DensityOperator,
    pub irreality_plus: f64,
    pub irreality_minus: f64,
    pub local_irreality_plus: f64,
    pub local_irreality_minus: f64,
    /// Contextual realism-based nonlocality for the positron path given an
    /// unrevealed electron path measurement.
    pub rbn: f64,
    pub matter_purity: f64,
    pub matter_linear_entropy: f64,
}

pub fn stage_report(stage: Stage, config: &HardyConfig) -> Result<StageReport> {
    let state = stage_state(stage, config)?;
    let matter = partial_trace(&state.to_density(), &[POSITRON, ELECTRON])?;
    let plus = path_observable(Side::Positron);
    let minus = path_observable(Side::Electron);
    Ok(StageReport {
        stage,
        config: *config,
        irreality_plus: irreality(&matter, &plus)?,
        irreality_minus: irreality(&matter, &minus)?,
        local_irreality_plus: local_irreality(&matter, &plus)?,
        local_irreality_minus: local_irreality(&matter, &minus)?,
        rbn: contextual_rbn(&matter, &plus, &minus)?,
        matter_purity: purity(&matter),
        matter_linear_entropy: linear_entropy(&matter),
        state,
        matter,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hardy::{hardy_space, matter_space, VACUUM};
    use crate::qstate::{max_abs_diff, CVector};
    use crate::realism::unrevealed_measurement;
    use num_complex::Complex64;
    use std::f64::consts::{FRAC_1_SQRT_2, LN_2};

    const I: Complex64 = Complex64::new(0.0, 1.0);

    fn ket(p: usize, e: usize, g: usize) -> CVector {
        hardy_ket(p, e, g).amplitudes().clone()
    }

    /// |φ2+⟩|φ2−⟩|0⟩ written out term by term.
    fn phi2_pair() -> CVector {
        let s = FRAC_1_SQRT_2;
        let plus = [(Y, Complex64::new(s, 0.)), (X, I * s)];
        let minus = [(X, Complex64::new(s, 0.)), (Y, I * s)];
        let mut v = CVector::zeros(18);
        for (a, ca) in plus {
            for (b, cb) in minus {
                v += ket(a, b, 0) * (ca * cb);
            }
        }
        v
    }

    fn expected_psi3(c: &HardyConfig) -> CVector {
        phi2_pair() + ket(X, Y, 0).scale((1.0 - c.alpha()) / 2.0) - ket(VACUUM, VACUUM, 1) * (c.beta() / 2.0)
    }

    fn expected_psi4(c: &HardyConfig) -> CVector {
        ket(Y, X, 0) - phi2_pair().scale((1.0 - c.alpha()) / 2.0) - ket(VACUUM, VACUUM, 1) * (c.beta() / 2.0)
    }

    #[test]
    fn stage_two_is_phi_pair() {
        let c = HardyConfig::with_p(0.4).unwrap();
        let s = stage_state(Stage::Two, &c).unwrap();
        assert!((s.amplitudes() - phi2_pair()).norm() < 1e-14);
    }

    #[test]
    fn stage_three_and_four_match_written_forms() {
        for &(p, phi) in &[(0.0, 0.0), (0.3, 1.1), (1.0, 0.0), (0.77, 4.0)] {
            let c = HardyConfig::new(p, phi).unwrap();
            let s3 = stage_state(Stage::Three, &c).unwrap();
            assert!((s3.amplitudes() - expected_psi3(&c)).norm() < 1e-14);
            let target = crate::qstate::StateVector::new(hardy_space(), expected_psi4(&c)).unwrap();
            let s4 = stage_state(Stage::Four, &c).unwrap();
            assert!((s4.overlap(&target).unwrap() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn stage_four_without_interaction_returns_input() {
        let c = HardyConfig::with_p(0.0).unwrap();
        let s4 = stage_state(Stage::Four, &c).unwrap();
        assert!((s4.overlap(&hardy_ket(Y, X, 0)).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn matter_state_at_stage_three() {
        // |Θ2⟩⟨Θ2| + (p/4)|00⟩⟨00|
        let c = HardyConfig::new(0.6, 0.3).unwrap();
        let r = stage_report(Stage::Three, &c).unwrap();
        let theta: CVector = {
            let full = phi2_pair() + ket(X, Y, 0).scale((1.0 - c.alpha()) / 2.0);
            CVector::from_fn(9, |i, _| full[2 * i])
        };
        let mut expect = &theta * theta.adjoint();
        expect[(8, 8)] += Complex64::new(c.p() / 4.0, 0.0);
        assert!(max_abs_diff(r.matter.matrix(), &expect) < 1e-14);
        assert_eq!(r.matter.space(), &matter_space());
    }

    #[test]
    fn path_observable_is_complete() {
        let obs = path_observable(Side::Positron);
        let sum = obs.projectors().iter().fold(crate::qstate::CMatrix::zeros(3, 3), |a, p| a + p);
        assert!(max_abs_diff(&sum, &crate::qstate::CMatrix::identity(3, 3)) < 1e-15);
        assert_eq!(obs.projectors().len(), 3);
    }

    #[test]
    fn path_measurement_on_stage_two_is_path_diagonal() {
        let r = stage_report(Stage::Two, &HardyConfig::with_p(0.5).unwrap()).unwrap();
        let phi = unrevealed_measurement(&r.matter, &path_observable(Side::Positron)).unwrap();
        let sp = matter_space();
        for i in 0..9 {
            for j in 0..9 {
                if sp.split_index(i)[0] != sp.split_index(j)[0] {
                    assert_eq!(phi.matrix()[(i, j)].norm(), 0.0);
                }
            }
        }
    }

    #[test]
    fn first_stages_reports() {
        let c = HardyConfig::with_p(0.8).unwrap();
        let r1 = stage_report(Stage::One, &c).unwrap();
        for v in [r1.irreality_plus, r1.irreality_minus, r1.local_irreality_plus, r1.local_irreality_minus, r1.rbn] {
            assert!(v.abs() < 1e-12);
        }
        let r2 = stage_report(Stage::Two, &c).unwrap();
        for v in [r2.irreality_plus, r2.irreality_minus, r2.local_irreality_plus, r2.local_irreality_minus] {
            assert!((v - LN_2).abs() < 1e-10);
        }
        assert!(r2.rbn.abs() < 1e-10);
        let r3 = stage_report(Stage::Three, &HardyConfig::with_p(0.0).unwrap()).unwrap();
        assert!((r3.irreality_plus - LN_2).abs() < 1e-10);
    }
}
