use crate::error::{invalid, Result};

use super::CMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subsystem {
    pub label: String,
    pub dim: usize,
}

impl Subsystem {
    pub fn new(label: impl Into<String>, dim: usize) -> Self {
        Self {
            label: label.into(),
            dim,
        }
    }
}

/// Ordered tensor-factor structure of a Hilbert space. Row-major index
/// convention: the last subsystem varies fastest.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CompositeSpace {
    subsystems: Vec<Subsystem>,
}

impl CompositeSpace {
    pub fn new(subsystems: Vec<Subsystem>) -> Result<Self> {
        if subsystems.is_empty() {
            return invalid("a composite space needs at least one subsystem");
        }
        for (i, s) in subsystems.iter().enumerate() {
            if s.dim == 0 {
                return invalid(format!("subsystem '{}' has dimension 0", s.label));
            }
            if subsystems[..i].iter().any(|t| t.label == s.label) {
                return invalid(format!("duplicate subsystem label '{}'", s.label));
            }
        }
        Ok(Self { subsystems })
    }

    pub fn from_dims<S: Into<String>>(parts: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        Self::new(
            parts
                .into_iter()
                .map(|(l, d)| Subsystem::new(l, d))
                .collect(),
        )
    }

    /// A single-factor space.
    pub fn single(label: impl Into<String>, dim: usize) -> Result<Self> {
        Self::new(vec![Subsystem::new(label, dim)])
    }

    pub fn subsystems(&self) -> &[Subsystem] {
        &self.subsystems
    }

    pub fn len(&self) -> usize {
        self.subsystems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsystems.is_empty()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.subsystems.iter().map(|s| s.dim).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.subsystems.iter().map(|s| s.dim).product()
    }

    pub fn position(&self, label: &str) -> Result<usize> {
        self.subsystems
            .iter()
            .position(|s| s.label == label)
            .ok_or_else(|| crate::Error::InvalidArgument(format!("unknown subsystem '{label}'")))
    }

    pub fn subsystem(&self, label: &str) -> Result<&Subsystem> {
        Ok(&self.subsystems[self.position(label)?])
    }

    pub fn contains(&self, sub: &Subsystem) -> bool {
        self.subsystems.iter().any(|s| s == sub)
    }

    /// Concatenation `self ⊗ other`. Labels must stay unique.
    pub fn concat(&self, other: &CompositeSpace) -> Result<Self> {
        let mut subs = self.subsystems.clone();
        subs.extend(other.subsystems.iter().cloned());
        Self::new(subs)
    }

    /// The subspace made of the factors at `positions`, kept in their
    /// original relative order.
    pub(crate) fn restrict(&self, positions: &[usize]) -> Self {
        Self {
            subsystems: positions
                .iter()
                .map(|&i| self.subsystems[i].clone())
                .collect(),
        }
    }

    /// Multi-index of a flat index.
    pub fn split_index(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.subsystems.len()];
        for (slot, s) in out.iter_mut().zip(&self.subsystems).rev() {
            *slot = idx % s.dim;
            idx /= s.dim;
        }
        out
    }

    /// Flat index of a multi-index.
    pub fn join_index(&self, digits: &[usize]) -> usize {
        digits
            .iter()
            .zip(&self.subsystems)
            .fold(0, |acc, (&d, s)| acc * s.dim + d)
    }

    /// Lifts an operator on one factor to the whole space as
    /// `1 ⊗ … ⊗ op ⊗ … ⊗ 1`.
    pub fn embed(&self, label: &str, op: &CMatrix) -> Result<CMatrix> {
        let pos = self.position(label)?;
        let dim = self.subsystems[pos].dim;
        if op.nrows() != dim || op.ncols() != dim {
            return invalid(format!(
                "operator is {}x{} but subsystem '{label}' has dimension {dim}",
                op.nrows(),
                op.ncols()
            ));
        }
        let before: usize = self.subsystems[..pos].iter().map(|s| s.dim).product();
        let after: usize = self.subsystems[pos + 1..].iter().map(|s| s.dim).product();
        Ok(CMatrix::identity(before, before)
            .kronecker(op)
            .kronecker(&CMatrix::identity(after, after)))
    }
}
