use nalgebra::linalg::SymmetricEigen;
use nalgebra::DVector;

use super::{max_abs_diff, CMatrix};
use crate::error::{invalid, Result};

/// Eigen-decomposition `H = V Λ V†` of a Hermitian matrix, eigenvalues
/// ascending, columns of `eigenvectors` orthonormal and aligned with them.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: DVector<f64>,
    pub eigenvectors: CMatrix,
}

impl SpectralDecomposition {
    /// `V diag(f(λ)) V†`.
    pub fn map_eigenvalues(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let mut scaled = self.eigenvectors.clone();
        for (j, &lambda) in self.eigenvalues.iter().enumerate() {
            let v = f(lambda);
            scaled.column_mut(j).scale_mut(v);
        }
        scaled * self.eigenvectors.adjoint()
    }

    pub fn reconstruct(&self) -> CMatrix {
        self.map_eigenvalues(|x| x)
    }
}

/// Hermitian eigensolver (nalgebra's tridiagonal QR underneath).
/// Rejects inputs whose anti-Hermitian part exceeds `hermitian_tol`.
pub fn spectral_decomposition(h: &CMatrix) -> Result<SpectralDecomposition> {
    spectral_decomposition_with(h, 1e-10)
}

pub(crate) fn spectral_decomposition_with(
    h: &CMatrix,
    hermitian_tol: f64,
) -> Result<SpectralDecomposition> {
    if !h.is_square() || h.nrows() == 0 {
        return invalid(format!(
            "spectral decomposition needs a nonempty square matrix, got {}x{}",
            h.nrows(),
            h.ncols()
        ));
    }
    let adj = h.adjoint();
    let skew = max_abs_diff(h, &adj);
    if !(skew <= hermitian_tol) {
        return invalid(format!("matrix is not Hermitian (max |H - H†| = {skew:e})"));
    }
    let sym = (h + adj).unscale(2.0);
    let eig = SymmetricEigen::new(sym);

    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

    let eigenvalues = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
    let mut eigenvectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        eigenvectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    })
}
