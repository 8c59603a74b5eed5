use num_complex::Complex64;

use crate::error::{invalid, Result};
use crate::qstate::{max_abs_diff, CMatrix, CVector, Subsystem, Tolerances};

/// Complete family of mutually orthogonal projectors on one subsystem.
///
/// Eigenvalue labels are not stored: every metric here depends only on the
/// projectors. The observable applies to any composite space that contains
/// a factor with the same label and dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveObservable {
    subsystem: Subsystem,
    projectors: Vec<CMatrix>,
}

impl ProjectiveObservable {
    pub fn new(subsystem: Subsystem, projectors: Vec<CMatrix>) -> Result<Self> {
        Self::with_tolerance(subsystem, projectors, Tolerances::default().projector)
    }

    pub fn with_tolerance(subsystem: Subsystem, projectors: Vec<CMatrix>, tol: f64) -> Result<Self> {
        let d = subsystem.dim;
        if projectors.is_empty() {
            return invalid("an observable needs at least one projector");
        }
        let mut sum = CMatrix::zeros(d, d);
        for (a, p) in projectors.iter().enumerate() {
            if p.nrows() != d || p.ncols() != d {
                return invalid(format!("projector {a} is not {d}x{d}"));
            }
            if max_abs_diff(p, &p.adjoint()) > tol {
                return invalid(format!("projector {a} is not self-adjoint"));
            }
            if max_abs_diff(&(p * p), p) > tol {
                return invalid(format!("projector {a} is not idempotent"));
            }
            for (b, q) in projectors[..a].iter().enumerate() {
                if crate::qstate::max_abs(&(p * q)) > tol {
                    return invalid(format!("projectors {b} and {a} are not orthogonal"));
                }
            }
            sum += p;
        }
        if max_abs_diff(&sum, &CMatrix::identity(d, d)) > tol {
            return invalid("projectors do not resolve the identity");
        }
        Ok(Self {
            subsystem,
            projectors,
        })
    }

    /// Rank-one projectors onto the vectors of an orthonormal basis.
    pub fn from_basis(subsystem: Subsystem, basis: &[CVector]) -> Result<Self> {
        if basis.len() != subsystem.dim {
            return invalid(format!(
                "{} basis vectors for a subsystem of dimension {}",
                basis.len(),
                subsystem.dim
            ));
        }
        if basis.iter().any(|v| v.len() != subsystem.dim) {
            return invalid("basis vector length does not match the subsystem");
        }
        let projectors = basis.iter().map(|v| v * v.adjoint()).collect();
        Self::new(subsystem, projectors)
    }

    /// Projectors onto the computational basis states.
    pub fn computational(subsystem: Subsystem) -> Self {
        let d = subsystem.dim;
        let projectors = (0..d)
            .map(|a| {
                let mut p = CMatrix::zeros(d, d);
                p[(a, a)] = Complex64::new(1.0, 0.0);
                p
            })
            .collect();
        Self {
            subsystem,
            projectors,
        }
    }

    /// Discrete Fourier basis, mutually unbiased with the computational one.
    pub fn fourier(subsystem: Subsystem) -> Self {
        let d = subsystem.dim;
        let basis: Vec<CVector> = (0..d)
            .map(|k| {
                CVector::from_fn(d, |j, _| {
                    let angle = 2.0 * std::f64::consts::PI * (j * k) as f64 / d as f64;
                    Complex64::from_polar(1.0 / (d as f64).sqrt(), angle)
                })
            })
            .collect();
        let projectors = basis.iter().map(|v| v * v.adjoint()).collect();
        Self {
            subsystem,
            projectors,
        }
    }

    /// The observable `U A U†`.
    pub fn conjugated(&self, unitary: &CMatrix) -> Result<Self> {
        let d = self.subsystem.dim;
        if unitary.nrows() != d || unitary.ncols() != d {
            return invalid("unitary does not match the subsystem dimension");
        }
        let adj = unitary.adjoint();
        Ok(Self {
            subsystem: self.subsystem.clone(),
            projectors: self.projectors.iter().map(|p| unitary * p * &adj).collect(),
        })
    }

    pub fn subsystem(&self) -> &Subsystem {
        &self.subsystem
    }

    pub fn label(&self) -> &str {
        &self.subsystem.label
    }

    pub fn projectors(&self) -> &[CMatrix] {
        &self.projectors
    }
}
