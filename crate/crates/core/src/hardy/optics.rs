use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

use super::{hardy_space, HardyConfig, Side, NO_PHOTON, PHOTON_PAIR, VACUUM, X, Y};
use crate::qstate::CMatrix;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// 3×3 particle operator acting as `m` on span{x, y} and fixing the vacuum.
fn particle_op(m: [[Complex64; 2]; 2]) -> CMatrix {
    let mut op = CMatrix::identity(3, 3);
    for (r, row) in m.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            op[(r, c)] = *v;
        }
    }
    op
}

fn lift(side: Side, op: &CMatrix) -> CMatrix {
    hardy_space()
        .embed(side.label(), op)
        .expect("particle operators are 3x3")
}

/// `|x⟩ ↦ (|x⟩ + i|y⟩)/√2`, `|y⟩ ↦ (|y⟩ + i|x⟩)/√2` on one particle.
pub fn beam_splitter(side: Side) -> CMatrix {
    let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let is = I * FRAC_1_SQRT_2;
    // columns are images of x and y
    lift(side, &particle_op([[s, is], [is, s]]))
}

/// `|x⟩ ↦ i|y⟩`, `|y⟩ ↦ i|x⟩` on one particle.
pub fn mirror(side: Side) -> CMatrix {
    let z = Complex64::new(0.0, 0.0);
    lift(side, &particle_op([[z, I], [I, z]]))
}

/// Two-level rotation between `|x, y, 0⟩` and `|0, 0, 2⟩`:
/// `|x,y,0⟩ ↦ α|x,y,0⟩ + β|0,0,2⟩`, `|0,0,2⟩ ↦ −β̄|x,y,0⟩ + α|0,0,2⟩`,
/// identity elsewhere.
pub fn annihilation(config: &HardyConfig) -> CMatrix {
    let space = hardy_space();
    let meet = space.join_index(&[X, Y, NO_PHOTON]);
    let gone = space.join_index(&[VACUUM, VACUUM, PHOTON_PAIR]);
    let alpha = Complex64::new(config.alpha(), 0.0);
    let beta = config.beta();
    let mut u = CMatrix::identity(18, 18);
    u[(meet, meet)] = alpha;
    u[(gone, meet)] = beta;
    u[(meet, gone)] = -beta.conj();
    u[(gone, gone)] = alpha;
    u
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hardy::hardy_ket;
    use crate::qstate::max_abs_diff;

    fn is_unitary(u: &CMatrix) -> bool {
        max_abs_diff(&(u.adjoint() * u), &CMatrix::identity(u.nrows(), u.nrows())) < 1e-12
    }

    #[test]
    fn beam_splitter_action() {
        for side in [Side::Positron, Side::Electron] {
            let bs = beam_splitter(side);
            assert!(is_unitary(&bs));
            let (xk, yk, vk) = match side {
                Side::Positron => (hardy_ket(X, X, 0), hardy_ket(Y, X, 0), hardy_ket(VACUUM, X, 0)),
                Side::Electron => (hardy_ket(X, X, 0), hardy_ket(X, Y, 0), hardy_ket(X, VACUUM, 0)),
            };
            let out = bs.clone() * xk.amplitudes();
            let expect = (xk.amplitudes() + yk.amplitudes() * I).unscale(2f64.sqrt());
            assert!((out - expect).norm() < 1e-15);
            assert!((bs.clone() * vk.amplitudes() - vk.amplitudes()).norm() < 1e-15);
            // twice is the mirror
            let twice = &bs * &bs * xk.amplitudes();
            assert!((twice - yk.amplitudes() * I).norm() < 1e-15);
        }
    }

    #[test]
    fn mirror_action() {
        let m = mirror(Side::Positron);
        assert!(is_unitary(&m));
        let out = &m * hardy_ket(Y, X, 0).amplitudes();
        assert!((out - hardy_ket(X, X, 0).amplitudes() * I).norm() < 1e-15);
        let v = hardy_ket(VACUUM, Y, 1);
        assert!((&m * v.amplitudes() - v.amplitudes()).norm() < 1e-15);
        let sq = &m * &m;
        let neg = -(&m * &m * hardy_ket(X, Y, 0).amplitudes());
        assert!((neg - hardy_ket(X, Y, 0).amplitudes()).norm() < 1e-15);
        assert!((sq * hardy_ket(VACUUM, X, 0).amplitudes() - hardy_ket(VACUUM, X, 0).amplitudes()).norm() < 1e-15);
    }

    #[test]
    fn annihilation_limits() {
        let id = annihilation(&HardyConfig::with_p(0.0).unwrap());
        assert!(max_abs_diff(&id, &CMatrix::identity(18, 18)) == 0.0);

        let full = annihilation(&HardyConfig::with_p(1.0).unwrap());
        let out = &full * hardy_ket(X, Y, 0).amplitudes();
        assert!((out - hardy_ket(VACUUM, VACUUM, 1).amplitudes()).norm() < 1e-15);

        let half = annihilation(&HardyConfig::with_p(0.5).unwrap());
        let out = &half * hardy_ket(X, Y, 0).amplitudes();
        let s = FRAC_1_SQRT_2;
        let expect = hardy_ket(X, Y, 0).amplitudes().scale(s) + hardy_ket(VACUUM, VACUUM, 1).amplitudes().scale(s);
        assert!((out - expect).norm() < 1e-15);
    }

    #[test]
    fn annihilation_unitary_on_grid() {
        for i in 0..=20 {
            for j in 0..8 {
                let c = HardyConfig::new(i as f64 / 20.0, j as f64 * 0.8).unwrap();
                assert!(is_unitary(&annihilation(&c)));
            }
        }
    }
}
