//! Distinguishability of channels and channel ensembles.

pub mod eb;
pub mod polygon;
pub mod probe;
pub mod result;
pub mod search;
pub mod su2;

pub use eb::{eb_finite_copy_check, EbCheckReport};
pub use polygon::{
    copies_upper_bound, eigenphase_arc, min_copies_perfect, origin_distance_to_hull, relative_eigenphases,
    two_unitary_min_overlap, unitary_eigenvalues,
};
pub use probe::{capacity, channel_fidelity_at, dist_ops, ensemble_holevo_at, fidelity_ops};
pub use result::{OptimizationResult, ProbeState};
pub use search::{
    order_disagreement_search, paradox_holds, paradox_search, verify_ex3, OrderSearchConfig, OrderWitness,
    ParadoxHit, SearchConfig,
};
pub use su2::{ex3_u, ex3_v, random_su2, su2_distinguishability, SU2Ensemble};
