//! Entropic realism metrics for finite-dimensional quantum states, and a
//! full 18-dimensional simulation of Hardy's two-interferometer experiment
//! built on top of them.
//!
//! - [`qstate`]: composite spaces, pure and mixed states, partial traces,
//!   spectral decomposition and entropy functionals.
//! - [`realism`]: unrevealed measurements, irreality, its local/discord
//!   split, the irreality uncertainty gap and contextual realism-based
//!   nonlocality.
//! - [`hardy`]: optical elements, the annihilation interaction, the four
//!   stage states, per-stage metric reports, closed-form curves and
//!   detector statistics.
//! - [`cli`]: sweep, verify and distribution front ends used by the binary.

pub mod cli;
pub mod error;
pub mod hardy;
pub mod qstate;
pub mod random;
pub mod realism;

pub use error::{Error, Result};
pub use num_complex::Complex64;
