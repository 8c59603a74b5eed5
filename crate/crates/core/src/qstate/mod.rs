//! Dense complex-matrix state machinery.

mod entropy;
mod space;
mod spectral;
mod state;

pub(crate) use entropy::xlnx;
pub use entropy::{
    linear_entropy, purity, relative_entropy, relative_entropy_with, shannon_entropy,
    von_neumann_entropy, von_neumann_entropy_with,
};
pub use space::{CompositeSpace, Subsystem};
pub use spectral::{spectral_decomposition, SpectralDecomposition};
pub use state::{
    partial_trace, tensor_product, ClassicalDistribution, DensityOperator, State, StateVector,
};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Numerical thresholds shared by validation, entropies and metric clamps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Max |ρ − ρ†| entry for a density operator.
    pub hermitian: f64,
    /// Max |Tr ρ − 1|, also used for classical distributions.
    pub trace: f64,
    /// Max |‖ψ‖² − 1| for a state vector.
    pub normalization: f64,
    /// Eigenvalues in [−negativity, 0) are clipped to zero; below that they are rejected.
    pub negativity: f64,
    /// Eigenvalues at or below this count as outside the support.
    pub support: f64,
    /// Idempotence, self-adjointness and completeness of projector families.
    pub projector: f64,
    /// Max |H − H†| entry accepted by the eigensolver.
    pub spectral_hermitian: f64,
    /// Negative metric values within this slack are clamped to zero.
    pub metric_slack: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermitian: 1e-12,
            trace: 1e-12,
            normalization: 1e-12,
            negativity: 1e-10,
            support: 1e-10,
            projector: 1e-12,
            spectral_hermitian: 1e-10,
            metric_slack: 1e-10,
        }
    }
}

/// Largest absolute entry of `a - b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Largest absolute entry.
pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().map(|x| x.norm()).fold(0.0, f64::max)
}
