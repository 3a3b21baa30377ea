//! Central numerical tolerances.
//!
//! Every threshold used by the validators lives here. The defaults can be
//! replaced once per process with [`configure`], before the first call to
//! [`current`]; after that the values are frozen.

use std::sync::OnceLock;

/// Maximum entrywise |m - m†| for a matrix to count as Hermitian.
pub const HERMITIAN: f64 = 1e-9;
/// Eigenvalues in `[-PSD_CLIP, 0)` are numerical noise and clipped to zero.
pub const PSD_CLIP: f64 = 1e-9;
/// Allowed |tr ρ - 1| for a density matrix.
pub const TRACE: f64 = 1e-9;
/// Allowed |‖ψ‖ - 1| for a pure state.
pub const NORM: f64 = 1e-9;
/// Negative probability weights above this are clipped to zero.
pub const PROB_CLIP: f64 = 1e-12;
/// Allowed |Σp - 1| for a probability vector.
pub const PROB_SUM: f64 = 1e-9;
/// Slack for partial-sum comparisons in majorization.
pub const MAJORIZATION: f64 = 1e-12;
/// Unitarity residual ‖UU† - I‖_F.
pub const UNITARY: f64 = 1e-9;
/// |det U - 1| for SU(2) membership.
pub const DETERMINANT: f64 = 1e-9;
/// Kraus completeness residual ‖ΣA†A - I‖_F.
pub const COMPLETENESS: f64 = 1e-8;
/// Allowed trace drift in a channel output before renormalization is refused.
pub const OUTPUT_TRACE: f64 = 1e-8;
/// Eigenvalues below this (times max(1, λ_max)) are treated as exact zeros
/// before a square root; Jacobi leaves noise of order 1e-16 there, whose
/// square root would otherwise surface at the 1e-8 level.
pub const EIGEN_FLOOR: f64 = 1e-13;
/// Off-diagonal Frobenius mass at which the Jacobi sweep stops (relative to max(1, ‖m‖_F)).
pub const JACOBI_OFF: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub hermitian: f64,
    pub psd_clip: f64,
    pub trace: f64,
    pub norm: f64,
    pub prob_clip: f64,
    pub prob_sum: f64,
    pub majorization: f64,
    pub unitary: f64,
    pub determinant: f64,
    pub completeness: f64,
    pub output_trace: f64,
    pub eigen_floor: f64,
    pub jacobi_off: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermitian: HERMITIAN,
            psd_clip: PSD_CLIP,
            trace: TRACE,
            norm: NORM,
            prob_clip: PROB_CLIP,
            prob_sum: PROB_SUM,
            majorization: MAJORIZATION,
            unitary: UNITARY,
            determinant: DETERMINANT,
            completeness: COMPLETENESS,
            output_trace: OUTPUT_TRACE,
            eigen_floor: EIGEN_FLOOR,
            jacobi_off: JACOBI_OFF,
        }
    }
}

static ACTIVE: OnceLock<Tolerances> = OnceLock::new();

/// Installs process-wide tolerances. Returns `false` if tolerances were
/// already fixed (by an earlier `configure` or a call to [`current`]).
pub fn configure(tolerances: Tolerances) -> bool {
    ACTIVE.set(tolerances).is_ok()
}

/// The active tolerances.
pub fn current() -> &'static Tolerances {
    ACTIVE.get_or_init(Tolerances::default)
}
