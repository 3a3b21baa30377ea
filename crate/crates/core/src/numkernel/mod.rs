//! Dense complex linear algebra and classical-probability utilities.

pub mod eig;
pub mod matrix;
pub mod prob;
pub mod random;

pub use eig::{clip_spectrum, hermitian_eig, hermitian_eigenvalues, matrix_sqrt_psd, Spectrum};
pub use matrix::{
    inner, partial_trace, partial_transpose, tensor_product, tensor_vec, vec_norm, Complex, ComplexMatrix,
    Subsystem, ONE, ZERO,
};
pub use prob::{majorizes, majorizes_spectra, shannon_entropy, ProbVector};
pub use random::{derive_seed, random_hermitian, random_unitary, rng_for};
