use num_complex::Complex64;

use super::ProjectiveObservable;
use crate::error::{domain, invalid, Result};
use crate::qstate::{
    max_abs_diff, partial_trace, relative_entropy_with, von_neumann_entropy_with,
    ClassicalDistribution, CMatrix, CVector, CompositeSpace, DensityOperator, Tolerances,
};

fn check_applies(rho: &DensityOperator, obs: &ProjectiveObservable) -> Result<()> {
    if rho.space().contains(obs.subsystem()) {
        Ok(())
    } else {
        invalid(format!(
            "observable acts on '{}' (dim {}), which is not a factor of the state's space",
            obs.label(),
            obs.subsystem().dim
        ))
    }
}

/// Clamps float noise below zero; anything more negative than the slack
/// is reported as an error.
fn nonnegative(value: f64, slack: f64, what: &str) -> Result<f64> {
    if value < -slack {
        domain(format!("{what} came out negative ({value:e})"))
    } else {
        Ok(value.max(0.0))
    }
}

/// Φ_A(ρ) = Σ_a (A_a ⊗ 1) ρ (A_a ⊗ 1).
pub fn unrevealed_measurement(
    rho: &DensityOperator,
    obs: &ProjectiveObservable,
) -> Result<DensityOperator> {
    check_applies(rho, obs)?;
    let space = rho.space();
    let n = space.total_dim();
    let mut out = CMatrix::zeros(n, n);
    for p in obs.projectors() {
        let lifted = space.embed(obs.label(), p)?;
        out += &lifted * rho.matrix() * &lifted;
    }
    Ok(DensityOperator::from_parts_unchecked(space.clone(), out))
}

/// Fixed-point test `Φ_A(ρ) = ρ` in the max-entry norm.
pub fn is_reality_state(rho: &DensityOperator, obs: &ProjectiveObservable, tol: f64) -> Result<bool> {
    if !(tol > 0.0) {
        return invalid("reality-state tolerance must be positive");
    }
    let phi = unrevealed_measurement(rho, obs)?;
    Ok(max_abs_diff(phi.matrix(), rho.matrix()) <= tol)
}

/// Irreality `S(Φ_A(ρ)) − S(ρ)` in nats.
pub fn irreality(rho: &DensityOperator, obs: &ProjectiveObservable) -> Result<f64> {
    irreality_with(rho, obs, &Tolerances::default())
}

pub fn irreality_with(
    rho: &DensityOperator,
    obs: &ProjectiveObservable,
    tol: &Tolerances,
) -> Result<f64> {
    let phi = unrevealed_measurement(rho, obs)?;
    let value = von_neumann_entropy_with(&phi, tol)? - von_neumann_entropy_with(rho, tol)?;
    nonnegative(value, tol.metric_slack, "irreality")
}

/// Irreality of the reduced state on the observable's own subsystem.
pub fn local_irreality(rho: &DensityOperator, obs: &ProjectiveObservable) -> Result<f64> {
    check_applies(rho, obs)?;
    let reduced = partial_trace(rho, &[obs.label()])?;
    irreality(&reduced, obs)
}

/// Basis-dependent discord: mutual information between the observable's
/// subsystem and the rest that is destroyed by Φ_A. Equals
/// `irreality − local_irreality`.
pub fn basis_discord(rho: &DensityOperator, obs: &ProjectiveObservable) -> Result<f64> {
    check_applies(rho, obs)?;
    let tol = Tolerances::default();
    let measured = unrevealed_measurement(rho, obs)?;
    let value = mutual_information(rho, obs.label(), &tol)?
        - mutual_information(&measured, obs.label(), &tol)?;
    nonnegative(value, tol.metric_slack, "basis discord")
}

/// `S(ρ_A) + S(ρ_rest) − S(ρ)`; zero for a single-factor space.
fn mutual_information(rho: &DensityOperator, label: &str, tol: &Tolerances) -> Result<f64> {
    let space = rho.space();
    if space.len() == 1 {
        return Ok(0.0);
    }
    let rest: Vec<&str> = space
        .subsystems()
        .iter()
        .filter(|s| s.label != label)
        .map(|s| s.label.as_str())
        .collect();
    let s_a = von_neumann_entropy_with(&partial_trace(rho, &[label])?, tol)?;
    let s_b = von_neumann_entropy_with(&partial_trace(rho, &rest)?, tol)?;
    Ok(s_a + s_b - von_neumann_entropy_with(rho, tol)?)
}

/// Contextual realism-based nonlocality `𝕴_A(ρ) − 𝕴_A(Φ_B(ρ))`.
pub fn contextual_rbn(
    rho: &DensityOperator,
    obs_a: &ProjectiveObservable,
    obs_b: &ProjectiveObservable,
) -> Result<f64> {
    contextual_rbn_with(rho, obs_a, obs_b, &Tolerances::default())
}

pub fn contextual_rbn_with(
    rho: &DensityOperator,
    obs_a: &ProjectiveObservable,
    obs_b: &ProjectiveObservable,
    tol: &Tolerances,
) -> Result<f64> {
    if obs_a.label() == obs_b.label() {
        return invalid("realism-based nonlocality needs observables on distinct subsystems");
    }
    check_applies(rho, obs_a)?;
    let measured_b = unrevealed_measurement(rho, obs_b)?;
    let value = irreality_with(rho, obs_a, tol)? - irreality_with(&measured_b, obs_a, tol)?;
    nonnegative(value, tol.metric_slack, "realism-based nonlocality")
}

/// `𝕴_A(ρ) + 𝕴_{A'}(ρ) − S(ρ ‖ 1_A/d_A ⊗ ρ_B)`.
///
/// Nonnegative (up to float noise) when A and A′ are mutually unbiased.
/// For an arbitrary pair the gap is bounded below by `−ln(d_A · c)` with
/// `c` from [`overlap_constant`]; `A = A′` on an eigenstate reaches it.
pub fn irreality_uncertainty_gap(
    rho: &DensityOperator,
    obs_a: &ProjectiveObservable,
    obs_a2: &ProjectiveObservable,
) -> Result<f64> {
    if obs_a.subsystem() != obs_a2.subsystem() {
        return invalid("both observables must act on the same subsystem");
    }
    check_applies(rho, obs_a)?;
    let tol = Tolerances::default();
    let reference = dephased_reference(rho, obs_a.label())?;
    let rel = relative_entropy_with(rho, &reference, &tol)?;
    if !rel.is_finite() {
        return domain("relative entropy to a full-support reference diverged");
    }
    Ok(irreality_with(rho, obs_a, &tol)? + irreality_with(rho, obs_a2, &tol)? - rel)
}

/// `c = max_{a,b} ‖A_a A′_b‖²` (operator norm). Equals `1/d` for mutually
/// unbiased rank-one families and 1 when the families share a projector.
pub fn overlap_constant(obs_a: &ProjectiveObservable, obs_a2: &ProjectiveObservable) -> Result<f64> {
    if obs_a.subsystem() != obs_a2.subsystem() {
        return invalid("both observables must act on the same subsystem");
    }
    let mut c = 0.0f64;
    for p in obs_a.projectors() {
        for q in obs_a2.projectors() {
            let pq = p * q;
            let gram = pq.adjoint() * &pq;
            let top = crate::qstate::spectral_decomposition(&gram)?.eigenvalues.max();
            c = c.max(top);
        }
    }
    Ok(c)
}

/// `1_A/d_A ⊗ Tr_A ρ`, laid out in ρ's own factor order.
fn dephased_reference(rho: &DensityOperator, label: &str) -> Result<DensityOperator> {
    let space = rho.space();
    let pos = space.position(label)?;
    let d_a = space.subsystems()[pos].dim;
    if space.len() == 1 {
        return Ok(DensityOperator::maximally_mixed(space.clone()));
    }
    let rest: Vec<&str> = space
        .subsystems()
        .iter()
        .filter(|s| s.label != label)
        .map(|s| s.label.as_str())
        .collect();
    let rho_b = partial_trace(rho, &rest)?;
    let rest_space = rho_b.space().clone();

    let n = space.total_dim();
    let split: Vec<(usize, usize)> = (0..n)
        .map(|i| {
            let mut digits = space.split_index(i);
            let a = digits.remove(pos);
            (a, rest_space.join_index(&digits))
        })
        .collect();
    let m = CMatrix::from_fn(n, n, |i, j| {
        let (ai, bi) = split[i];
        let (aj, bj) = split[j];
        if ai == aj {
            rho_b.matrix()[(bi, bj)] / d_a as f64
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    Ok(DensityOperator::from_parts_unchecked(space.clone(), m))
}

fn check_orthonormal(family: &[CVector], tol: f64, name: &str) -> Result<usize> {
    let dim = match family.first() {
        Some(v) => v.len(),
        None => return invalid(format!("{name} family is empty")),
    };
    for (i, u) in family.iter().enumerate() {
        if u.len() != dim {
            return invalid(format!("{name} family mixes vector lengths"));
        }
        for (j, v) in family.iter().enumerate().take(i + 1) {
            let expect = if i == j { 1.0 } else { 0.0 };
            if (u.dotc(v) - Complex64::new(expect, 0.0)).norm() > tol {
                return invalid(format!("{name} family is not orthonormal at ({i}, {j})"));
            }
        }
    }
    Ok(dim)
}

/// `Σ_λ p_λ |a_λ⟩⟨a_λ| ⊗ |b_λ⟩⟨b_λ|` on a two-factor space labelled
/// `"A"` and `"B"`.
pub fn reality_state(
    dist: &ClassicalDistribution,
    basis_a: &[CVector],
    basis_b: &[CVector],
) -> Result<DensityOperator> {
    let tol = Tolerances::default().projector;
    let d_a = check_orthonormal(basis_a, tol, "A")?;
    let d_b = check_orthonormal(basis_b, tol, "B")?;
    if basis_a.len() < dist.len() || basis_b.len() < dist.len() {
        return invalid("orthonormal families are shorter than the distribution");
    }
    let space = CompositeSpace::from_dims([("A", d_a), ("B", d_b)])?;
    let n = d_a * d_b;
    let mut m = CMatrix::zeros(n, n);
    for ((p, a), b) in dist.probabilities().iter().zip(basis_a).zip(basis_b) {
        let ab = a.kronecker(b);
        m += (&ab * ab.adjoint()).scale(*p);
    }
    Ok(DensityOperator::from_parts_unchecked(space, m))
}
