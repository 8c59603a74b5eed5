use std::f64::consts::LN_2;
use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::sweep::{sweep_record, SweepRecord};
use crate::error::Result;
use crate::hardy::{
    annihilation, beam_splitter, dark_probability, detection_distribution, matter_purity_analytic,
    mirror, stage3_irreality_analytic, stage3_local_irreality_analytic, stage3_rbn_analytic,
    stage4_asymptotics, stage_report, stage_state, uniform_grid, HardyConfig, Side, Stage,
};
use crate::qstate::{max_abs_diff, CMatrix, CVector, CompositeSpace, Subsystem};
use crate::random;
use crate::realism::{
    basis_discord, contextual_rbn, irreality, irreality_uncertainty_gap, local_irreality,
    overlap_constant, reality_state, unrevealed_measurement, ProjectiveObservable,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    /// `|actual − expected| ≤ tolerance`
    Within,
    /// `actual ≥ expected − tolerance`
    AtLeast,
    /// `actual > expected`; tolerance unused.
    Above,
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub comparison: Comparison,
    pub expected: f64,
    pub actual: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Set when the computation itself failed.
    pub error: Option<String>,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub duration: Duration,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<40} {:>4} {:>12} {:>24} {:>10}  result",
            "check", "cmp", "expected", "actual", "tolerance"
        )?;
        for c in &self.checks {
            let cmp = match c.comparison {
                Comparison::Within => "==",
                Comparison::AtLeast => ">=",
                Comparison::Above => ">",
            };
            write!(
                f,
                "{:<40} {:>4} {:>12.6e} {:>24.16e} {:>10.1e}  {}",
                c.name,
                cmp,
                c.expected,
                c.actual,
                c.tolerance,
                if c.passed { "PASS" } else { "FAIL" }
            )?;
            if let Some(e) = &c.error {
                write!(f, " ({e})")?;
            }
            writeln!(f)?;
        }
        let n_pass = self.checks.iter().filter(|c| c.passed).count();
        writeln!(
            f,
            "overall: {} ({}/{} checks) in {:.3} s",
            if self.passed() { "PASS" } else { "FAIL" },
            n_pass,
            self.checks.len(),
            self.duration.as_secs_f64()
        )
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Replaces every check's tolerance when set.
    pub tolerance: Option<f64>,
    pub seed: u64,
    /// Random draws per framework property.
    pub samples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            tolerance: None,
            seed: 0x0048_4152_4459,
            samples: 1000,
        }
    }
}

struct Checker {
    tolerance: Option<f64>,
    checks: Vec<Check>,
}

impl Checker {
    fn push(&mut self, name: &str, comparison: Comparison, expected: f64, actual: Result<f64>, tol: f64) {
        let tolerance = self.tolerance.unwrap_or(tol);
        let (actual, error) = match actual {
            Ok(v) => (v, None),
            Err(e) => (f64::NAN, Some(e.to_string())),
        };
        let passed = error.is_none()
            && match comparison {
                Comparison::Within => (actual - expected).abs() <= tolerance,
                Comparison::AtLeast => actual >= expected - tolerance,
                Comparison::Above => actual > expected,
            };
        self.checks.push(Check {
            name: name.to_string(),
            comparison,
            expected,
            actual,
            tolerance,
            passed,
            error,
        });
    }

    fn within(&mut self, name: &str, expected: f64, actual: Result<f64>, tol: f64) {
        self.push(name, Comparison::Within, expected, actual, tol);
    }

    fn at_least(&mut self, name: &str, bound: f64, actual: Result<f64>, tol: f64) {
        self.push(name, Comparison::AtLeast, bound, actual, tol);
    }

    fn above(&mut self, name: &str, bound: f64, actual: Result<f64>) {
        self.push(name, Comparison::Above, bound, actual, 0.0);
    }
}

fn max_of(values: impl IntoIterator<Item = Result<f64>>) -> Result<f64> {
    values.into_iter().try_fold(0.0f64, |acc, v| Ok(acc.max(v?)))
}

fn min_of(values: impl IntoIterator<Item = Result<f64>>) -> Result<f64> {
    values.into_iter().try_fold(f64::INFINITY, |acc, v| Ok(acc.min(v?)))
}

fn unitarity_error(u: &CMatrix) -> f64 {
    max_abs_diff(&(u.adjoint() * u), &CMatrix::identity(u.nrows(), u.ncols()))
}

fn record_values(r: &SweepRecord) -> [f64; 10] {
    [
        r.irreality_plus,
        r.irreality_minus,
        r.local_irreality_plus,
        r.local_irreality_minus,
        r.rbn,
        r.purity,
        r.linear_entropy,
        r.p_dark,
        r.p_at_least_one_dark,
        r.p,
    ]
}

pub fn run_verify(opts: &VerifyOptions) -> VerifyReport {
    let start = Instant::now();
    let mut c = Checker {
        tolerance: opts.tolerance,
        checks: Vec::new(),
    };
    hardy_checks(&mut c);
    framework_checks(&mut c, opts);
    VerifyReport {
        checks: c.checks,
        duration: start.elapsed(),
    }
}

fn hardy_checks(c: &mut Checker) {
    let grid = uniform_grid(0.0, 1.0, 21);
    let cfg = |p: f64| HardyConfig::with_p(p);

    c.within(
        "optics_unitarity",
        0.0,
        max_of(grid.iter().flat_map(|&p| {
            (0..8).map(move |j| {
                let config = HardyConfig::new(p, j as f64 * std::f64::consts::TAU / 8.0)?;
                Ok(unitarity_error(&annihilation(&config)))
            })
        }).chain([Side::Positron, Side::Electron].into_iter().flat_map(|s| {
            [Ok(unitarity_error(&beam_splitter(s))), Ok(unitarity_error(&mirror(s)))]
        }))),
        1e-12,
    );
    c.within(
        "stage_state_normalization",
        0.0,
        max_of(grid.iter().flat_map(|&p| {
            Stage::ALL.into_iter().map(move |k| {
                let s = stage_state(k, &HardyConfig::new(p, 1.3)?)?;
                Ok((s.amplitudes().norm_squared() - 1.0).abs())
            })
        })),
        1e-12,
    );

    c.within(
        "stage1_metrics_zero",
        0.0,
        max_of(grid.iter().map(|&p| {
            let r = stage_report(Stage::One, &cfg(p)?)?;
            Ok([r.irreality_plus, r.irreality_minus, r.local_irreality_plus, r.local_irreality_minus, r.rbn]
                .iter()
                .fold(0.0f64, |a, v| a.max(v.abs())))
        })),
        1e-12,
    );
    c.within(
        "stage2_irreality_ln2",
        0.0,
        max_of(grid.iter().map(|&p| {
            let r = stage_report(Stage::Two, &cfg(p)?)?;
            Ok([r.irreality_plus, r.irreality_minus, r.local_irreality_plus, r.local_irreality_minus]
                .iter()
                .fold(0.0f64, |a, v| a.max((v - LN_2).abs())))
        })),
        1e-10,
    );
    c.within(
        "stage2_rbn_zero",
        0.0,
        max_of(grid.iter().map(|&p| Ok(stage_report(Stage::Two, &cfg(p)?)?.rbn.abs()))),
        1e-10,
    );

    let stage3: Result<Vec<_>> = grid.iter().map(|&p| stage_report(Stage::Three, &cfg(p)?)).collect();
    let stage4: Result<Vec<_>> = grid.iter().map(|&p| stage_report(Stage::Four, &cfg(p)?)).collect();
    match (&stage3, &stage4) {
        (Ok(s3), Ok(s4)) => {
            c.within(
                "stage3_irreality_analytic_match",
                0.0,
                max_of(s3.iter().map(|r| {
                    let a = stage3_irreality_analytic(r.config.p())?;
                    Ok((r.irreality_plus - a).abs().max((r.irreality_minus - a).abs()))
                })),
                1e-9,
            );
            c.within(
                "stage3_local_irreality_analytic_match",
                0.0,
                max_of(s3.iter().map(|r| {
                    let a = stage3_local_irreality_analytic(r.config.p())?;
                    Ok((r.local_irreality_plus - a).abs().max((r.local_irreality_minus - a).abs()))
                })),
                1e-9,
            );
            c.within(
                "stage3_rbn_analytic_match",
                0.0,
                max_of(s3.iter().map(|r| Ok((r.rbn - stage3_rbn_analytic(r.config.p())).abs()))),
                1e-9,
            );
            c.within(
                "stage3_purity_match",
                0.0,
                max_of(s3.iter().map(|r| {
                    Ok((r.matter_purity - matter_purity_analytic(r.config.p()).purity).abs())
                })),
                1e-10,
            );
            c.within(
                "stage3_linear_entropy_match",
                0.0,
                max_of(s3.iter().map(|r| {
                    Ok((r.matter_linear_entropy - matter_purity_analytic(r.config.p()).entanglement).abs())
                })),
                1e-10,
            );
            c.at_least(
                "stage3_rbn_monotone",
                0.0,
                min_of(s3.windows(2).map(|w| Ok(w[1].rbn - w[0].rbn))),
                1e-12,
            );
            c.within(
                "stage4_purity_equals_stage3",
                0.0,
                max_of(s3.iter().zip(s4).map(|(a, b)| Ok((a.matter_purity - b.matter_purity).abs()))),
                1e-10,
            );
            c.within(
                "path_symmetry",
                0.0,
                max_of(s3.iter().chain(s4).map(|r| {
                    Ok((r.irreality_plus - r.irreality_minus)
                        .abs()
                        .max((r.local_irreality_plus - r.local_irreality_minus).abs()))
                })),
                1e-10,
            );
            c.above(
                "stage4_rbn_positive",
                0.0,
                min_of(s4.iter().filter(|r| r.config.p() > 0.0).map(|r| Ok(r.rbn))),
            );
            c.within("stage4_rbn_zero_at_p0", 0.0, Ok(s4[0].rbn), 1e-10);
            c.at_least(
                "stage4_irreality_ge_local",
                0.0,
                min_of(s4.iter().map(|r| {
                    Ok((r.irreality_plus - r.local_irreality_plus)
                        .min(r.irreality_minus - r.local_irreality_minus))
                })),
                1e-10,
            );
        }
        (Err(e), _) | (_, Err(e)) => c.within("stage_reports", 0.0, Err(e.clone()), 0.0),
    }

    let at_zero = || stage_report(Stage::Three, &cfg(0.0)?);
    let at_one = || stage_report(Stage::Three, &cfg(1.0)?);
    c.within("stage3_p0_irreality", LN_2, at_zero().map(|r| r.irreality_plus), 1e-5);
    c.within("stage3_p0_local_irreality", LN_2, at_zero().map(|r| r.local_irreality_plus), 1e-5);
    c.within("stage3_p0_rbn", 0.0, at_zero().map(|r| r.rbn), 1e-5);
    let s5 = 5f64.sqrt();
    c.within("stage3_p1_irreality", -0.5 * LN_2 + 0.75 * 3f64.ln(), at_one().map(|r| r.irreality_plus), 1e-5);
    c.within(
        "stage3_p1_local_irreality",
        -1.25 * LN_2 + ((3.0 - s5) * (3.0 - s5).ln() + (3.0 + s5) * (3.0 + s5).ln()) / 8.0,
        at_one().map(|r| r.local_irreality_plus),
        1e-5,
    );
    c.within("stage3_p1_rbn", -LN_2 + 0.75 * 3f64.ln(), at_one().map(|r| r.rbn), 1e-5);

    let hardy = detection_distribution(&HardyConfig::with_p(1.0).unwrap());
    c.within("detection_both_dark_p1", 1.0 / 16.0, hardy.clone().map(|d| d.both_dark()), 1e-12);
    c.within("detection_at_least_one_dark_p1", 3.0 / 16.0, hardy.map(|d| d.at_least_one_dark()), 1e-12);
    c.within(
        "dark_probability_match",
        0.0,
        max_of(grid.iter().map(|&p| {
            Ok((detection_distribution(&cfg(p)?)?.both_dark() - dark_probability(p)).abs())
        })),
        1e-12,
    );
    c.within(
        "detection_normalization",
        0.0,
        max_of(grid.iter().flat_map(|&p| {
            (0..4).map(move |j| Ok((detection_distribution(&HardyConfig::new(p, j as f64)?)?.total() - 1.0).abs()))
        })),
        1e-10,
    );

    let p_small = 1e-3;
    let numeric = stage_report(Stage::Four, &HardyConfig::with_p(p_small).unwrap());
    let asym = stage4_asymptotics(p_small);
    let ratio = |f: fn(&crate::hardy::StageReport) -> f64, g: fn(&crate::hardy::Stage4Asymptotics) -> f64| -> Result<f64> {
        let n = numeric.as_ref().map_err(Clone::clone)?;
        let a = asym.as_ref().map_err(Clone::clone)?;
        Ok(f(n) / g(a))
    };
    c.within("stage4_asymptotic_irreality_ratio", 1.0, ratio(|r| r.irreality_plus, |a| a.irreality), 0.05);
    c.within("stage4_asymptotic_local_irreality_ratio", 1.0, ratio(|r| r.local_irreality_plus, |a| a.local_irreality), 0.05);
    c.within("stage4_asymptotic_rbn_ratio", 1.0, ratio(|r| r.rbn, |a| a.rbn), 0.05);
    c.within(
        "stage4_vanishing_small_p",
        0.0,
        stage_report(Stage::Four, &HardyConfig::with_p(1e-7).unwrap()).map(|r| {
            [r.irreality_plus, r.irreality_minus, r.local_irreality_plus, r.local_irreality_minus, r.rbn]
                .iter()
                .fold(0.0f64, |a, v| a.max(*v))
        }),
        1e-12,
    );

    c.within(
        "phase_invariance",
        0.0,
        max_of(Stage::ALL.into_iter().map(|k| {
            let a = sweep_record(k, &HardyConfig::new(0.6, 0.0)?)?;
            let b = sweep_record(k, &HardyConfig::new(0.6, 2.1)?)?;
            Ok(record_values(&a)
                .iter()
                .zip(record_values(&b))
                .fold(0.0f64, |m, (x, y)| m.max((x - y).abs())))
        })),
        1e-12,
    );
}

fn bipartite_space(dims: (usize, usize)) -> CompositeSpace {
    CompositeSpace::from_dims([("A", dims.0), ("B", dims.1)]).expect("distinct labels")
}

const DIMS: [(usize, usize); 3] = [(2, 2), (2, 3), (3, 3)];

fn framework_checks(c: &mut Checker, opts: &VerifyOptions) {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let n = opts.samples.max(1);

    let mut idempotence = Ok(0.0f64);
    let mut nonneg = Ok(f64::INFINITY);
    let mut decomposition = Ok(0.0f64);
    let mut gap = Ok(f64::INFINITY);
    let mut covariance = Ok(0.0f64);
    let mut gap_general = Ok(f64::INFINITY);
    for i in 0..n {
        let dims = DIMS[i % DIMS.len()];
        let space = bipartite_space(dims);
        let rank = rng.random_range(1..=space.total_dim());
        let rho = random::density(&mut rng, &space, rank);
        let a = random::observable(&mut rng, &Subsystem::new("A", dims.0));
        let a2 = random::observable(&mut rng, &Subsystem::new("A", dims.0));
        let (m1, m2) = random::unbiased_pair(&mut rng, &Subsystem::new("A", dims.0));
        let b = random::observable(&mut rng, &Subsystem::new("B", dims.1));

        let sample = (|| -> Result<[f64; 6]> {
            let phi = unrevealed_measurement(&rho, &a)?;
            let phi2 = unrevealed_measurement(&phi, &a)?;
            let total = irreality(&rho, &a)?;
            let local = local_irreality(&rho, &a)?;
            let discord = basis_discord(&rho, &a)?;
            let rbn = contextual_rbn(&rho, &a, &b)?;
            let g = irreality_uncertainty_gap(&rho, &m1, &m2)?;
            let bound = -(dims.0 as f64 * overlap_constant(&a, &a2)?).ln();
            let g_general = irreality_uncertainty_gap(&rho, &a, &a2)? - bound;
            let u = random::unitary(&mut rng, dims.0);
            let u_full = space.embed("A", &u)?;
            let lhs = unrevealed_measurement(&rho.conjugate(&u_full)?, &a.conjugated(&u)?)?;
            let rhs = phi.conjugate(&u_full)?;
            Ok([
                max_abs_diff(phi2.matrix(), phi.matrix()),
                total.min(local).min(discord).min(rbn),
                (total - local - discord).abs(),
                g,
                max_abs_diff(lhs.matrix(), rhs.matrix()),
                g_general,
            ])
        })();
        match sample {
            Ok(v) => {
                idempotence = idempotence.map(|m| m.max(v[0]));
                nonneg = nonneg.map(|m| m.min(v[1]));
                decomposition = decomposition.map(|m| m.max(v[2]));
                gap = gap.map(|m| m.min(v[3]));
                covariance = covariance.map(|m| m.max(v[4]));
                gap_general = gap_general.map(|m| m.min(v[5]));
            }
            Err(e) => {
                idempotence = Err(e.clone());
                nonneg = Err(e.clone());
                decomposition = Err(e.clone());
                gap = Err(e.clone());
                gap_general = Err(e.clone());
                covariance = Err(e);
                break;
            }
        }
    }
    c.within("framework_phi_idempotence", 0.0, idempotence, 1e-12);
    c.at_least("framework_metrics_nonnegative", 0.0, nonneg, 1e-10);
    c.within("framework_decomposition_identity", 0.0, decomposition, 1e-10);
    c.at_least("framework_uncertainty_gap_unbiased", 0.0, gap, 1e-9);
    c.at_least("framework_uncertainty_gap_overlap_bound", 0.0, gap_general, 1e-9);
    c.within("framework_phi_unitary_covariance", 0.0, covariance, 1e-10);

    c.within(
        "framework_rbn_vanishes_product_and_reality",
        0.0,
        max_of((0..n).map(|i| {
            let dims = DIMS[i % DIMS.len()];
            let sa = CompositeSpace::single("A", dims.0)?;
            let sb = CompositeSpace::single("B", dims.1)?;
            let a = random::observable(&mut rng, &Subsystem::new("A", dims.0));
            let b = random::observable(&mut rng, &Subsystem::new("B", dims.1));
            let ra = random::density(&mut rng, &sa, dims.0);
            let rb = random::density(&mut rng, &sb, dims.1);
            let product = ra.tensor(&rb)?;
            let sigma = random::density(&mut rng, &bipartite_space(dims), dims.0 * dims.1);
            let real_a = unrevealed_measurement(&sigma, &a)?;
            let real_b = unrevealed_measurement(&sigma, &b)?;
            Ok(contextual_rbn(&product, &a, &b)?
                .max(contextual_rbn(&real_a, &a, &b)?)
                .max(contextual_rbn(&real_b, &a, &b)?))
        })),
        1e-10,
    );

    let zero = CVector::from_vec(vec![1.0.into(), 0.0.into()]);
    let one = CVector::from_vec(vec![0.0.into(), 1.0.into()]);
    let z_basis = [zero, one];
    let fa = ProjectiveObservable::fourier(Subsystem::new("A", 2));
    let fb = ProjectiveObservable::fourier(Subsystem::new("B", 2));
    c.within(
        "framework_reality_state_shannon",
        0.0,
        max_of((0..100).map(|_| {
            let p = random::distribution(&mut rng, 2);
            let state = reality_state(&p, &z_basis, &z_basis)?;
            Ok((contextual_rbn(&state, &fa, &fb)? - crate::qstate::shannon_entropy(&p)).abs())
        })),
        1e-9,
    );
}
