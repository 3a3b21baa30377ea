//! Distinguishability of quantum states, channels and channel ensembles.
//!
//! The crate is layered:
//!
//! - [`numkernel`]: dense complex matrices, a Jacobi Hermitian eigensolver,
//!   probability vectors, majorization and seeded random matrices.
//! - [`qstate`]: density matrices and pure states with von Neumann entropy,
//!   the Holevo quantity, Uhlmann fidelity, purification and Gram matrices.
//! - [`qchannel`]: Kraus, unitary and measure-and-prepare channels, their
//!   application with identity extension, composition and dilation.
//! - [`distinguish`]: channel fidelity and ensemble distinguishability via a
//!   probe-state search, the SU(2) closed form, eigenphase polygon distance,
//!   copy counts, capacity and randomized searches.
//! - [`verify`]: seeded property suites for the monotonicity and additivity
//!   laws.

// `!(x > 0.0)` is used on purpose so NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod distinguish;
pub mod error;
pub mod numkernel;
pub mod optimize;
pub mod qchannel;
pub mod qstate;
pub mod tolerance;
pub mod verify;

pub use error::{Error, Result};
