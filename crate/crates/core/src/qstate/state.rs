use num_complex::Complex64;

use super::spectral::spectral_decomposition_with;
use super::{max_abs_diff, CMatrix, CVector, CompositeSpace, Tolerances};
use crate::error::{invalid, Result};

/// Normalized pure state on a composite space.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    space: CompositeSpace,
    amplitudes: CVector,
}

impl StateVector {
    pub fn new(space: CompositeSpace, amplitudes: CVector) -> Result<Self> {
        Self::with_tolerances(space, amplitudes, &Tolerances::default())
    }

    pub fn with_tolerances(space: CompositeSpace, amplitudes: CVector, tol: &Tolerances) -> Result<Self> {
        if amplitudes.len() != space.total_dim() {
            return invalid(format!(
                "{} amplitudes for a space of dimension {}",
                amplitudes.len(),
                space.total_dim()
            ));
        }
        let norm2 = amplitudes.norm_squared();
        if !((norm2 - 1.0).abs() <= tol.normalization) {
            return invalid(format!("state vector has squared norm {norm2}"));
        }
        Ok(Self { space, amplitudes })
    }

    /// Rescales to unit norm. Fails only for the zero vector.
    pub fn normalized(space: CompositeSpace, amplitudes: CVector) -> Result<Self> {
        let n = amplitudes.norm();
        if !(n > 0.0) || !n.is_finite() {
            return invalid("cannot normalize a zero or non-finite vector");
        }
        Self::new(space, amplitudes.unscale(n))
    }

    /// Computational basis vector selected by one index per subsystem.
    pub fn basis(space: CompositeSpace, digits: &[usize]) -> Result<Self> {
        if digits.len() != space.len()
            || digits.iter().zip(space.subsystems()).any(|(&d, s)| d >= s.dim)
        {
            return invalid(format!("basis digits {digits:?} do not fit the space"));
        }
        let mut amps = CVector::zeros(space.total_dim());
        amps[space.join_index(digits)] = Complex64::new(1.0, 0.0);
        Ok(Self {
            space,
            amplitudes: amps,
        })
    }

    pub fn space(&self) -> &CompositeSpace {
        &self.space
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.space != other.space {
            return invalid("inner product of states on different spaces");
        }
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    /// |⟨self|other⟩|, which is 1 iff the two rays coincide.
    pub fn overlap(&self, other: &StateVector) -> Result<f64> {
        Ok(self.inner(other)?.norm())
    }

    /// `U|ψ⟩` for a unitary acting on the whole space. Unitarity is the
    /// caller's responsibility; the result is checked for normalization.
    pub fn evolve(&self, unitary: &CMatrix) -> Result<StateVector> {
        let n = self.space.total_dim();
        if unitary.nrows() != n || unitary.ncols() != n {
            return invalid("operator dimension does not match the state");
        }
        StateVector::new(self.space.clone(), unitary * &self.amplitudes)
    }

    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        let space = self.space.concat(&other.space)?;
        Ok(Self {
            space,
            amplitudes: self.amplitudes.kronecker(&other.amplitudes),
        })
    }

    pub fn to_density(&self) -> DensityOperator {
        DensityOperator {
            space: self.space.clone(),
            matrix: &self.amplitudes * self.amplitudes.adjoint(),
        }
    }
}

/// Positive semidefinite, unit-trace operator on a composite space.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    space: CompositeSpace,
    matrix: CMatrix,
}

impl DensityOperator {
    pub fn new(space: CompositeSpace, matrix: CMatrix) -> Result<Self> {
        Self::with_tolerances(space, matrix, &Tolerances::default())
    }

    pub fn with_tolerances(space: CompositeSpace, matrix: CMatrix, tol: &Tolerances) -> Result<Self> {
        let n = space.total_dim();
        if matrix.nrows() != n || matrix.ncols() != n {
            return invalid(format!(
                "{}x{} matrix for a space of dimension {n}",
                matrix.nrows(),
                matrix.ncols()
            ));
        }
        let skew = max_abs_diff(&matrix, &matrix.adjoint());
        if !(skew <= tol.hermitian) {
            return invalid(format!("density matrix is not Hermitian (deviation {skew:e})"));
        }
        let tr = matrix.trace();
        if !((tr.re - 1.0).abs() <= tol.trace && tr.im.abs() <= tol.trace) {
            return invalid(format!("density matrix has trace {tr}"));
        }
        let eig = spectral_decomposition_with(&matrix, tol.spectral_hermitian)?;
        let min = eig.eigenvalues.min();
        if min < -tol.negativity {
            return invalid(format!("density matrix has negative eigenvalue {min:e}"));
        }
        Ok(Self { space, matrix })
    }

    /// Diagonal operator from a probability vector.
    pub fn diagonal(space: CompositeSpace, probabilities: &ClassicalDistribution) -> Result<Self> {
        let p = probabilities.probabilities();
        if p.len() != space.total_dim() {
            return invalid("distribution length does not match the space dimension");
        }
        let diag = CVector::from_iterator(p.len(), p.iter().map(|&x| Complex64::new(x, 0.0)));
        Ok(Self {
            space,
            matrix: CMatrix::from_diagonal(&diag),
        })
    }

    pub fn maximally_mixed(space: CompositeSpace) -> Self {
        let n = space.total_dim();
        Self {
            space,
            matrix: CMatrix::identity(n, n).unscale(n as f64),
        }
    }

    pub(crate) fn from_parts_unchecked(space: CompositeSpace, matrix: CMatrix) -> Self {
        Self { space, matrix }
    }

    pub fn space(&self) -> &CompositeSpace {
        &self.space
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    pub fn tensor(&self, other: &DensityOperator) -> Result<DensityOperator> {
        let space = self.space.concat(&other.space)?;
        Ok(Self {
            space,
            matrix: self.matrix.kronecker(&other.matrix),
        })
    }

    /// `U ρ U†` for an operator on the whole space.
    pub fn conjugate(&self, unitary: &CMatrix) -> Result<DensityOperator> {
        let n = self.space.total_dim();
        if unitary.nrows() != n || unitary.ncols() != n {
            return invalid("operator dimension does not match the state");
        }
        Ok(Self {
            space: self.space.clone(),
            matrix: unitary * &self.matrix * unitary.adjoint(),
        })
    }

    /// Convex combination `Σ w_i ρ_i` of operators on one space.
    pub fn mixture(weights: &ClassicalDistribution, states: &[DensityOperator]) -> Result<Self> {
        let w = weights.probabilities();
        if w.len() != states.len() || states.is_empty() {
            return invalid("mixture needs one weight per state");
        }
        let space = states[0].space.clone();
        let n = space.total_dim();
        let mut m = CMatrix::zeros(n, n);
        for (wi, s) in w.iter().zip(states) {
            if s.space != space {
                return invalid("mixture components live on different spaces");
            }
            m += s.matrix.scale(*wi);
        }
        Ok(Self { space, matrix: m })
    }
}

/// Either kind of state, for operations that accept both.
#[derive(Debug, Clone, PartialEq)]
pub enum State {
    Pure(StateVector),
    Mixed(DensityOperator),
}

impl From<StateVector> for State {
    fn from(v: StateVector) -> Self {
        State::Pure(v)
    }
}

impl From<DensityOperator> for State {
    fn from(r: DensityOperator) -> Self {
        State::Mixed(r)
    }
}

/// Kronecker product of same-kind factors in the given order.
pub fn tensor_product(factors: &[State]) -> Result<State> {
    let (first, rest) = match factors.split_first() {
        Some(x) => x,
        None => return invalid("tensor product of an empty list"),
    };
    match first {
        State::Pure(v0) => {
            let mut acc = v0.clone();
            for f in rest {
                match f {
                    State::Pure(v) => acc = acc.tensor(v)?,
                    State::Mixed(_) => return invalid("cannot mix state vectors and density operators"),
                }
            }
            Ok(State::Pure(acc))
        }
        State::Mixed(r0) => {
            let mut acc = r0.clone();
            for f in rest {
                match f {
                    State::Mixed(r) => acc = acc.tensor(r)?,
                    State::Pure(_) => return invalid("cannot mix state vectors and density operators"),
                }
            }
            Ok(State::Mixed(acc))
        }
    }
}

/// Traces out every subsystem not named in `keep`. The kept factors retain
/// their original relative order regardless of the order of `keep`.
pub fn partial_trace(rho: &DensityOperator, keep: &[&str]) -> Result<DensityOperator> {
    if keep.is_empty() {
        return invalid("partial trace must keep at least one subsystem");
    }
    let space = rho.space();
    let mut kept = Vec::with_capacity(keep.len());
    for label in keep {
        let pos = space.position(label)?;
        if !kept.contains(&pos) {
            kept.push(pos);
        }
    }
    kept.sort_unstable();
    if kept.len() == space.len() {
        return Ok(rho.clone());
    }
    let traced: Vec<usize> = (0..space.len()).filter(|i| !kept.contains(i)).collect();
    let kept_space = space.restrict(&kept);
    let traced_space = space.restrict(&traced);

    let nk = kept_space.total_dim();
    let nt = traced_space.total_dim();
    // full index of (kept multi-index, traced multi-index)
    let mut full = vec![vec![0usize; nt]; nk];
    let mut digits = vec![0usize; space.len()];
    for (k, row) in full.iter_mut().enumerate() {
        let kd = kept_space.split_index(k);
        for (t, slot) in row.iter_mut().enumerate() {
            let td = traced_space.split_index(t);
            for (&p, &d) in kept.iter().zip(&kd) {
                digits[p] = d;
            }
            for (&p, &d) in traced.iter().zip(&td) {
                digits[p] = d;
            }
            *slot = space.join_index(&digits);
        }
    }
    let m = rho.matrix();
    let out = CMatrix::from_fn(nk, nk, |i, j| {
        (0..nt).map(|t| m[(full[i][t], full[j][t])]).sum()
    });
    Ok(DensityOperator::from_parts_unchecked(kept_space, out))
}

/// Probability vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalDistribution {
    probabilities: Vec<f64>,
}

impl ClassicalDistribution {
    pub fn new(probabilities: Vec<f64>) -> Result<Self> {
        Self::with_tolerance(probabilities, Tolerances::default().trace)
    }

    pub fn with_tolerance(probabilities: Vec<f64>, tol: f64) -> Result<Self> {
        if probabilities.is_empty() {
            return invalid("empty distribution");
        }
        if let Some(bad) = probabilities.iter().find(|p| !(**p >= 0.0) || !p.is_finite()) {
            return invalid(format!("probability {bad} is not a finite nonnegative number"));
        }
        let total: f64 = probabilities.iter().sum();
        if !((total - 1.0).abs() <= tol) {
            return invalid(format!("probabilities sum to {total}"));
        }
        Ok(Self { probabilities })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return invalid("empty distribution");
        }
        Ok(Self {
            probabilities: vec![1.0 / n as f64; n],
        })
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn len(&self) -> usize {
        self.probabilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probabilities.is_empty()
    }
}
