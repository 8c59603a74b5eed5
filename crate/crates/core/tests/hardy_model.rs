use std::f64::consts::{LN_2, TAU};

use hardy_irrealism::hardy::{
    annihilation, beam_splitter, dark_probability, detection_distribution, matter_purity_analytic,
    mirror, path_observable, stage3_irreality_analytic, stage3_local_irreality_analytic,
    stage3_rbn_analytic, stage4_asymptotics, stage_report, stage_state, uniform_grid, HardyConfig,
    Side, Stage,
};
use hardy_irrealism::qstate::{max_abs_diff, partial_trace, CMatrix};
use hardy_irrealism::realism::basis_discord;
use proptest::prelude::*;

fn cfg(p: f64) -> HardyConfig {
    HardyConfig::with_p(p).unwrap()
}

fn unitarity_defect(u: &CMatrix) -> f64 {
    max_abs_diff(&(u.adjoint() * u), &CMatrix::identity(u.nrows(), u.ncols()))
}

#[test]
fn optics_unitary_over_parameter_grid() {
    for side in [Side::Positron, Side::Electron] {
        assert!(unitarity_defect(&beam_splitter(side)) < 1e-12);
        assert!(unitarity_defect(&mirror(side)) < 1e-12);
    }
    for p in uniform_grid(0.0, 1.0, 21) {
        for k in 0..8 {
            let c = HardyConfig::new(p, k as f64 * TAU / 8.0).unwrap();
            assert!(unitarity_defect(&annihilation(&c)) < 1e-12, "p={p} k={k}");
        }
    }
}

#[test]
fn stage_states_normalized() {
    for p in uniform_grid(0.0, 1.0, 21) {
        for stage in Stage::ALL {
            let psi = stage_state(stage, &cfg(p)).unwrap();
            assert!((psi.amplitudes().norm() - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn stage3_matches_closed_forms_on_fine_grid() {
    for p in uniform_grid(0.0, 1.0, 21) {
        let r = stage_report(Stage::Three, &cfg(p)).unwrap();
        let i = stage3_irreality_analytic(p).unwrap();
        let l = stage3_local_irreality_analytic(p).unwrap();
        assert!((r.irreality_plus - i).abs() < 1e-9, "p={p}");
        assert!((r.irreality_minus - i).abs() < 1e-9, "p={p}");
        assert!((r.local_irreality_plus - l).abs() < 1e-9, "p={p}");
        assert!((r.local_irreality_minus - l).abs() < 1e-9, "p={p}");
        assert!((r.rbn - stage3_rbn_analytic(p)).abs() < 1e-9, "p={p}");
        let pe = matter_purity_analytic(p);
        assert!((r.matter_purity - pe.purity).abs() < 1e-10);
        assert!((r.matter_linear_entropy - pe.entanglement).abs() < 1e-10);
    }
}

#[test]
fn stage3_rbn_grows_with_p() {
    let grid = uniform_grid(0.0, 1.0, 41);
    let rbn: Vec<f64> = grid.iter().map(|&p| stage3_rbn_analytic(p)).collect();
    assert!(rbn.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn final_stage_shape() {
    for p in uniform_grid(0.0, 1.0, 21) {
        let r3 = stage_report(Stage::Three, &cfg(p)).unwrap();
        let r4 = stage_report(Stage::Four, &cfg(p)).unwrap();
        assert!((r4.matter_purity - r3.matter_purity).abs() < 1e-10);
        assert!(r4.irreality_plus >= r4.local_irreality_plus - 1e-12);
        assert!(r4.irreality_minus >= r4.local_irreality_minus - 1e-12);
        if p == 0.0 {
            assert!(r4.rbn.abs() < 1e-12);
        } else {
            assert!(r4.rbn > 0.0, "p={p}");
        }
    }
}

#[test]
fn final_stage_small_p_expansion() {
    for p in [1e-3, 5e-4] {
        let r = stage_report(Stage::Four, &cfg(p)).unwrap();
        let a = stage4_asymptotics(p).unwrap();
        for (num, lead) in [
            (r.irreality_plus, a.irreality),
            (r.local_irreality_plus, a.local_irreality),
            (r.rbn, a.rbn),
        ] {
            assert!((num / lead - 1.0).abs() < 0.05, "p={p}: {num} vs {lead}");
        }
    }
    let r = stage_report(Stage::Four, &cfg(1e-7)).unwrap();
    assert!(r.irreality_plus < 1e-12 && r.local_irreality_plus < 1e-12 && r.rbn < 1e-12);
    assert!(stage4_asymptotics(0.0).is_err());
}

#[test]
fn discord_at_full_interaction() {
    let r = stage_report(Stage::Three, &cfg(1.0)).unwrap();
    let d = basis_discord(&r.matter, &path_observable(Side::Positron)).unwrap();
    assert!((d - 0.2860).abs() < 1e-4, "{d}");
    assert!((d - (r.irreality_plus - r.local_irreality_plus)).abs() < 1e-10);
}

#[test]
fn detection_statistics() {
    let d = detection_distribution(&cfg(1.0)).unwrap();
    let expected = [1.0, 1.0, 9.0, 1.0, 4.0].map(|x| x / 16.0);
    for (a, b) in d.as_array().iter().zip(expected) {
        assert!((a - b).abs() < 1e-12);
    }
    let d0 = detection_distribution(&cfg(0.0)).unwrap();
    for (a, b) in d0.as_array().iter().zip([0.0, 0.0, 1.0, 0.0, 0.0]) {
        assert!((a - b).abs() < 1e-12);
    }
    for p in [0.25, 0.5, 0.75] {
        let s = 1.0 - (1.0f64 - p).sqrt();
        let d = detection_distribution(&cfg(p)).unwrap();
        assert!((dark_probability(p) - s * s / 16.0).abs() < 1e-15);
        assert!((d.both_dark() - dark_probability(p)).abs() < 1e-12);
        assert!((d.at_least_one_dark() - 3.0 * dark_probability(p)).abs() < 1e-12);
    }
}

#[test]
fn early_stages_are_trivial_or_maximally_unreal() {
    let one = stage_report(Stage::One, &cfg(0.4)).unwrap();
    let two = stage_report(Stage::Two, &cfg(0.4)).unwrap();
    for v in [one.irreality_plus, one.local_irreality_minus, one.rbn, two.rbn] {
        assert!(v.abs() < 1e-12);
    }
    for v in [two.irreality_plus, two.irreality_minus, two.local_irreality_plus] {
        assert!((v - LN_2).abs() < 1e-10);
    }
}

#[test]
fn config_rejects_out_of_range() {
    assert!(HardyConfig::with_p(-0.1).is_err());
    assert!(HardyConfig::with_p(1.5).is_err());
    assert!(HardyConfig::new(0.5, f64::NAN).is_err());
    assert!((HardyConfig::new(0.5, TAU + 1.0).unwrap().phi() - 1.0).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn phase_does_not_change_metrics(p in 0.0f64..=1.0, phi in 0.0f64..TAU) {
        for stage in Stage::ALL {
            let a = stage_report(stage, &cfg(p)).unwrap();
            let b = stage_report(stage, &HardyConfig::new(p, phi).unwrap()).unwrap();
            prop_assert!((a.irreality_plus - b.irreality_plus).abs() < 1e-12);
            prop_assert!((a.local_irreality_minus - b.local_irreality_minus).abs() < 1e-12);
            prop_assert!((a.rbn - b.rbn).abs() < 1e-12);
            prop_assert!((a.matter_purity - b.matter_purity).abs() < 1e-12);
        }
        let da = detection_distribution(&cfg(p)).unwrap().as_array();
        let db = detection_distribution(&HardyConfig::new(p, phi).unwrap()).unwrap().as_array();
        for (x, y) in da.iter().zip(db) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn positron_and_electron_are_symmetric(p in 0.0f64..=1.0) {
        for stage in Stage::ALL {
            let r = stage_report(stage, &cfg(p)).unwrap();
            prop_assert!((r.irreality_plus - r.irreality_minus).abs() < 1e-10);
            prop_assert!((r.local_irreality_plus - r.local_irreality_minus).abs() < 1e-10);
        }
    }

    #[test]
    fn detection_sums_to_one(p in 0.0f64..=1.0, phi in 0.0f64..TAU) {
        let d = detection_distribution(&HardyConfig::new(p, phi).unwrap()).unwrap();
        prop_assert!((d.total() - 1.0).abs() < 1e-12);
        prop_assert!(d.as_array().iter().all(|&x| x >= -1e-15));
    }

    #[test]
    fn photon_marginal_carries_the_annihilation_weight(p in 0.0f64..=1.0) {
        let psi = stage_state(Stage::Three, &cfg(p)).unwrap();
        let photon = partial_trace(&psi.to_density(), &["photon"]).unwrap();
        prop_assert!((photon.matrix()[(1, 1)].re - p / 4.0).abs() < 1e-12);
    }
}
