//! Quantum states and state-level measures.

pub mod measures;
pub mod purification;
pub mod state;

pub use measures::{
    fidelity_from_factors, fidelity_pure, gram_matrix, holevo_quantity, purify, uhlmann_fidelity,
    von_neumann_entropy,
};
pub use purification::{fidelity_purification_search, PurificationSearch};
pub use state::{random_density_matrix, random_pure_state, DensityMatrix, PureState, StateEnsemble};
