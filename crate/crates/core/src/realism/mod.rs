//! Entropic realism framework: projective observables, the
//! unrevealed-measurement map Φ_A and the metrics derived from it.

mod metrics;
mod observable;

pub use metrics::{
    basis_discord, contextual_rbn, contextual_rbn_with, irreality, irreality_uncertainty_gap,
    irreality_with, is_reality_state, local_irreality, overlap_constant, reality_state,
    unrevealed_measurement,
};
pub use observable::ProjectiveObservable;
