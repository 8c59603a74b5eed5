//! Closed-form curves for the interaction stage, small-`p` expansions for
//! the final stage, and the dark-detector probability.

use std::f64::consts::LN_2;

use crate::error::{domain, invalid, Result};
use crate::qstate::xlnx;

fn check_p(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        invalid(format!("p must lie in [0, 1], got {p}"))
    }
}

/// Path irreality of the stage-3 matter state (either particle).
pub fn stage3_irreality_analytic(p: f64) -> Result<f64> {
    check_p(p)?;
    let sum: f64 = (1..=2)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * xlnx(2f64.powi(k) - p)
        })
        .sum();
    Ok(-0.5 * LN_2 + 0.25 * sum)
}

/// `f_jk(p) = 2^k − p + (−1)^j [(1+(−1)^k)/2] √(8(1+√(1−p)) + p(p−4))`.
pub fn f_kernel(j: u32, k: u32, p: f64) -> Result<f64> {
    let radicand = 8.0 * (1.0 + (1.0 - p).sqrt()) + p * (p - 4.0);
    if !(radicand >= 0.0) {
        return domain(format!("negative radicand {radicand} at p = {p}"));
    }
    let sign_j = if j.is_multiple_of(2) { 1.0 } else { -1.0 };
    let even_k = if k.is_multiple_of(2) { 1.0 } else { 0.0 };
    Ok(2f64.powi(k as i32) - p + sign_j * even_k * radicand.sqrt())
}

/// Path local irreality of the stage-3 single-particle state.
pub fn stage3_local_irreality_analytic(p: f64) -> Result<f64> {
    check_p(p)?;
    let mut sum = 0.0;
    for k in 1..=2u32 {
        let sign_k1 = if k % 2 == 0 { -1.0 } else { 1.0 };
        let weight = 3.0 * sign_k1 + 1.0;
        for j in 1..=k {
            let f = f_kernel(j, k, p)?;
            // f ln f is continuous at 0; tiny negative rounding counts as 0
            sum += weight * xlnx(f.max(0.0));
        }
    }
    Ok(-(6.0 - p) / 4.0 * LN_2 - sum / 16.0)
}

/// Contextual realism-based nonlocality of the stage-3 matter state.
pub fn stage3_rbn_analytic(p: f64) -> f64 {
    let sum: f64 = (0..=2)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            (3.0 * sign - 1.0) * xlnx(2f64.powi(k) - p)
        })
        .sum();
    -LN_2 + sum / 8.0
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PurityEntanglement {
    pub purity: f64,
    /// Linear entropy of the matter state, i.e. its entanglement with the photon.
    pub entanglement: f64,
}

pub fn matter_purity_analytic(p: f64) -> PurityEntanglement {
    PurityEntanglement {
        purity: (8.0 - 4.0 * p + p * p) / 8.0,
        entanglement: p / 2.0 * (1.0 - p / 4.0),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stage4Asymptotics {
    pub irreality: f64,
    pub local_irreality: f64,
    pub rbn: f64,
}

/// Leading-order behaviour of the stage-4 metrics near `p = 0`.
pub fn stage4_asymptotics(p: f64) -> Result<Stage4Asymptotics> {
    if !(p > 0.0) {
        return invalid(format!("small-p expansion needs p > 0, got {p}"));
    }
    let p2 = p * p;
    let lp2 = p2.ln();
    Ok(Stage4Asymptotics {
        irreality: (1.0 + 32f64.ln() - lp2) * p2 / 32.0,
        local_irreality: (1.0 + 16f64.ln() - lp2) * p2 / 64.0,
        rbn: (1.0 + 4f64.ln() - lp2) * p2 / 64.0,
    })
}

/// Probability that both dark detectors click.
pub fn dark_probability(p: f64) -> f64 {
    let d = 1.0 - (1.0 - p).sqrt();
    d * d / 16.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stage3_endpoints() {
        assert!((stage3_irreality_analytic(0.0).unwrap() - LN_2).abs() < 1e-15);
        let at_one = -0.5 * LN_2 + 0.75 * 3f64.ln();
        assert!((stage3_irreality_analytic(1.0).unwrap() - at_one).abs() < 1e-15);

        assert!((stage3_local_irreality_analytic(0.0).unwrap() - LN_2).abs() < 1e-15);
        let s5 = 5f64.sqrt();
        let local_one = -1.25 * LN_2 + ((3.0 - s5) * (3.0 - s5).ln() + (3.0 + s5) * (3.0 + s5).ln()) / 8.0;
        assert!((stage3_local_irreality_analytic(1.0).unwrap() - local_one).abs() < 1e-14);

        assert!(stage3_rbn_analytic(0.0).abs() < 1e-15);
        assert!((stage3_rbn_analytic(1.0) - (-LN_2 + 0.75 * 3f64.ln())).abs() < 1e-15);
    }

    #[test]
    fn kernel_values() {
        // p = 0: (2, 0, 8)
        assert_eq!(f_kernel(1, 1, 0.0).unwrap(), 2.0);
        assert!(f_kernel(1, 2, 0.0).unwrap().abs() < 1e-15);
        assert!((f_kernel(2, 2, 0.0).unwrap() - 8.0).abs() < 1e-15);
        // p = 1: (1, 3 − √5, 3 + √5)
        let s5 = 5f64.sqrt();
        assert!((f_kernel(1, 1, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((f_kernel(1, 2, 1.0).unwrap() - (3.0 - s5)).abs() < 1e-15);
        assert!((f_kernel(2, 2, 1.0).unwrap() - (3.0 + s5)).abs() < 1e-15);
    }

    #[test]
    fn out_of_range_p() {
        assert!(stage3_irreality_analytic(1.5).is_err());
        assert!(stage3_local_irreality_analytic(-0.1).is_err());
        assert!(stage4_asymptotics(0.0).is_err());
        assert!(stage4_asymptotics(-1e-3).is_err());
    }

    #[test]
    fn purity_endpoints() {
        assert_eq!(matter_purity_analytic(0.0), PurityEntanglement { purity: 1.0, entanglement: 0.0 });
        let one = matter_purity_analytic(1.0);
        assert_eq!((one.purity, one.entanglement), (0.625, 0.375));
        for i in 0..=20 {
            let v = matter_purity_analytic(i as f64 / 20.0);
            assert!((v.purity + v.entanglement - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn asymptotics_vanish_and_order() {
        let tiny = stage4_asymptotics(1e-8).unwrap();
        assert!(tiny.irreality < 1e-14 && tiny.local_irreality < 1e-14 && tiny.rbn < 1e-14);
        let a = stage4_asymptotics(1e-3).unwrap();
        assert!(a.irreality > a.local_irreality && a.local_irreality > a.rbn);
    }

    #[test]
    fn dark_probability_values() {
        assert_eq!(dark_probability(0.0), 0.0);
        assert_eq!(dark_probability(1.0), 1.0 / 16.0);
        assert_eq!(3.0 * dark_probability(1.0), 3.0 / 16.0);
        let g: Vec<f64> = (0..=20).map(|i| dark_probability(i as f64 / 20.0)).collect();
        assert!(g.windows(2).all(|w| w[1] > w[0]));
    }
}
