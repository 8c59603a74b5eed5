use super::spectral::spectral_decomposition_with;
use super::{ClassicalDistribution, DensityOperator, Tolerances};
use crate::error::{domain, invalid, Result};

/// `x ln x` with the continuous extension `0 ln 0 = 0`.
pub(crate) fn xlnx(x: f64) -> f64 {
    if x > 0.0 {
        x * x.ln()
    } else {
        0.0
    }
}

fn clipped_spectrum(rho: &DensityOperator, tol: &Tolerances) -> Result<Vec<f64>> {
    let eig = spectral_decomposition_with(rho.matrix(), tol.spectral_hermitian)?;
    eig.eigenvalues
        .iter()
        .map(|&l| {
            if l < -tol.negativity {
                domain(format!("eigenvalue {l:e} below the clipping window"))
            } else {
                Ok(l.max(0.0))
            }
        })
        .collect()
}

/// Von Neumann entropy in nats.
pub fn von_neumann_entropy(rho: &DensityOperator) -> Result<f64> {
    von_neumann_entropy_with(rho, &Tolerances::default())
}

pub fn von_neumann_entropy_with(rho: &DensityOperator, tol: &Tolerances) -> Result<f64> {
    let s: f64 = clipped_spectrum(rho, tol)?.into_iter().map(xlnx).sum();
    Ok((-s).max(0.0))
}

/// Quantum relative entropy `S(ρ‖σ)` in nats; `+∞` when the support of ρ
/// is not contained in the support of σ.
pub fn relative_entropy(rho: &DensityOperator, sigma: &DensityOperator) -> Result<f64> {
    relative_entropy_with(rho, sigma, &Tolerances::default())
}

pub fn relative_entropy_with(
    rho: &DensityOperator,
    sigma: &DensityOperator,
    tol: &Tolerances,
) -> Result<f64> {
    if rho.space() != sigma.space() {
        return invalid("relative entropy of operators on different spaces");
    }
    let er = spectral_decomposition_with(rho.matrix(), tol.spectral_hermitian)?;
    let es = spectral_decomposition_with(sigma.matrix(), tol.spectral_hermitian)?;
    for l in er.eigenvalues.iter().chain(es.eigenvalues.iter()) {
        if *l < -tol.negativity {
            return domain(format!("eigenvalue {l:e} below the clipping window"));
        }
    }
    // |⟨r_i|s_j⟩|²
    let overlaps = (er.eigenvectors.adjoint() * &es.eigenvectors).map(|z| z.norm_sqr());

    let mut value: f64 = er.eigenvalues.iter().map(|&l| xlnx(l.max(0.0))).sum();
    for (i, &lr) in er.eigenvalues.iter().enumerate() {
        if lr <= tol.support {
            continue;
        }
        for (j, &ls) in es.eigenvalues.iter().enumerate() {
            let w = lr * overlaps[(i, j)];
            if ls <= tol.support {
                if w > tol.support {
                    return Ok(f64::INFINITY);
                }
                continue;
            }
            value -= w * ls.ln();
        }
    }
    Ok(value)
}

/// Shannon entropy in nats.
pub fn shannon_entropy(p: &ClassicalDistribution) -> f64 {
    -p.probabilities().iter().copied().map(xlnx).sum::<f64>()
}

/// `Tr ρ²`.
pub fn purity(rho: &DensityOperator) -> f64 {
    // Tr(ρ²) = Σ |ρ_ij|² for Hermitian ρ
    rho.matrix().iter().map(|z| z.norm_sqr()).sum()
}

/// `1 − Tr ρ²`.
pub fn linear_entropy(rho: &DensityOperator) -> f64 {
    1.0 - purity(rho)
}
