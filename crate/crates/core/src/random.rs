//! Seeded random states, unitaries and observables for property checks.

use nalgebra::linalg::QR;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::qstate::{CMatrix, CVector, ClassicalDistribution, CompositeSpace, DensityOperator, StateVector, Subsystem};
use crate::realism::ProjectiveObservable;

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn ginibre<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
pub fn unitary<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CMatrix {
    let qr = QR::new(ginibre(rng, d, d));
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..d {
        let rj = r[(j, j)];
        let phase = if rj.norm() > 0.0 { rj / rj.norm() } else { Complex64::new(1.0, 0.0) };
        for z in q.column_mut(j).iter_mut() {
            *z *= phase;
        }
    }
    q
}

/// Random Hermitian matrix with Gaussian entries.
pub fn hermitian<R: Rng + ?Sized>(rng: &mut R, d: usize) -> CMatrix {
    let g = ginibre(rng, d, d);
    (&g + g.adjoint()).unscale(2.0)
}

pub fn pure_state<R: Rng + ?Sized>(rng: &mut R, space: &CompositeSpace) -> StateVector {
    let n = space.total_dim();
    let v = CVector::from_fn(n, |_, _| gaussian(rng));
    StateVector::normalized(space.clone(), v).expect("gaussian vector is nonzero")
}

/// Induced-measure mixed state `G G† / Tr(G G†)`; `rank` caps the rank.
pub fn density<R: Rng + ?Sized>(rng: &mut R, space: &CompositeSpace, rank: usize) -> DensityOperator {
    let n = space.total_dim();
    let g = ginibre(rng, n, rank.clamp(1, n));
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    let m = m.unscale(tr);
    let m = (&m + m.adjoint()).unscale(2.0);
    DensityOperator::new(space.clone(), m).expect("Wishart matrix is a valid state")
}

/// Rank-one projectors onto a Haar-random orthonormal basis.
pub fn observable<R: Rng + ?Sized>(rng: &mut R, subsystem: &Subsystem) -> ProjectiveObservable {
    let u = unitary(rng, subsystem.dim);
    let basis: Vec<CVector> = (0..subsystem.dim).map(|j| u.column(j).into_owned()).collect();
    ProjectiveObservable::from_basis(subsystem.clone(), &basis).expect("unitary columns are orthonormal")
}

/// Uniform draw from the probability simplex.
pub fn distribution<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ClassicalDistribution {
    let raw: Vec<f64> = (0..n).map(|_| -rng.random::<f64>().max(f64::MIN_POSITIVE).ln()).collect();
    let total: f64 = raw.iter().sum();
    let mut p: Vec<f64> = raw.iter().map(|x| x / total).collect();
    // absorb rounding into the last entry
    let head: f64 = p[..n - 1].iter().sum();
    p[n - 1] = (1.0 - head).max(0.0);
    ClassicalDistribution::new(p).expect("normalized by construction")
}

/// A Haar-random basis together with its Fourier-rotated partner; the two
/// rank-one families are mutually unbiased.
pub fn unbiased_pair<R: Rng + ?Sized>(
    rng: &mut R,
    subsystem: &Subsystem,
) -> (ProjectiveObservable, ProjectiveObservable) {
    let d = subsystem.dim;
    let u = unitary(rng, d);
    let base = ProjectiveObservable::computational(subsystem.clone());
    let fourier = ProjectiveObservable::fourier(subsystem.clone());
    (
        base.conjugated(&u).expect("dimensions match"),
        fourier.conjugated(&u).expect("dimensions match"),
    )
}
