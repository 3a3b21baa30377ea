use crate::error::{Error, Result};
use crate::numkernel::random::orthonormalize_columns;
use crate::numkernel::{Complex, ComplexMatrix, ZERO};
use crate::optimize::{multi_start, Goal, OptimizerConfig};

use super::measures::purify;
use super::state::{DensityMatrix, PureState};

/// Result of the search over purifications.
#[derive(Debug, Clone, PartialEq)]
pub struct PurificationSearch {
    /// Best overlap found; a lower bound on the fidelity.
    pub value: f64,
    /// The purification of ρ₂ attaining `value` against the canonical purification of ρ₁.
    pub purification: PureState,
    pub restarts_run: usize,
    pub converged: bool,
    pub per_restart_values: Vec<f64>,
}

/// Maximizes |⟨Φ₁|(I⊗W)|Φ₂⟩| over ancilla unitaries W, where Φ₁ and Φ₂ are
/// the canonical purifications. W is parameterized by an arbitrary complex
/// d×d matrix orthonormalized column by column, so the search runs on the
/// unit sphere of `R^{2d²}`.
pub fn fidelity_purification_search(
    rho1: &DensityMatrix,
    rho2: &DensityMatrix,
    cfg: &OptimizerConfig,
) -> Result<PurificationSearch> {
    let d = rho1.dim();
    if rho2.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: rho2.dim(),
        });
    }
    let phi1 = purify(rho1)?;
    let phi2 = purify(rho2)?;

    let rotated = |x: &[f64]| -> Vec<Complex> {
        let w = ancilla_unitary(x, d);
        apply_on_ancilla(&w, phi2.amplitudes(), d)
    };
    let overlap = |x: &[f64]| -> f64 {
        let v = rotated(x);
        phi1.amplitudes()
            .iter()
            .zip(&v)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex>()
            .norm()
    };

    let search = multi_start(&[2 * d * d], Goal::Maximize, cfg, overlap)?;
    let best = search.best();
    Ok(PurificationSearch {
        value: best.value.clamp(0.0, 1.0),
        purification: PureState::normalized(rotated(&best.point))?,
        restarts_run: search.restarts.len(),
        converged: best.converged,
        per_restart_values: search.values(),
    })
}

fn ancilla_unitary(x: &[f64], d: usize) -> ComplexMatrix {
    let data: Vec<Complex> = x.chunks(2).map(|c| Complex::new(c[0], c[1])).collect();
    orthonormalize_columns(&ComplexMatrix::from_vec_unchecked(d, d, data))
}

/// (I ⊗ W)|ψ⟩ for ψ on `d ⊗ d`.
fn apply_on_ancilla(w: &ComplexMatrix, psi: &[Complex], d: usize) -> Vec<Complex> {
    let mut out = vec![ZERO; d * d];
    for i in 0..d {
        for a in 0..d {
            out[i * d + a] = (0..d).map(|b| w[(a, b)] * psi[i * d + b]).sum();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::measures::uhlmann_fidelity;
    use crate::qstate::state::random_density_matrix;

    fn cfg() -> OptimizerConfig {
        OptimizerConfig {
            restarts: 16,
            seed: 3,
            ..OptimizerConfig::default()
        }
    }

    #[test]
    fn equal_pure_states() {
        let p = PureState::plus().projector();
        let r = fidelity_purification_search(&p, &p, &cfg()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-6);
    }

    #[test]
    fn commuting_mixed_states() {
        let a = DensityMatrix::diagonal(&[0.5, 0.5]).unwrap();
        let b = DensityMatrix::diagonal(&[0.8, 0.2]).unwrap();
        let r = fidelity_purification_search(&a, &b, &cfg()).unwrap();
        let closed = 0.4f64.sqrt() + 0.1f64.sqrt();
        assert!((r.value - closed).abs() < 1e-4, "{}", r.value);
        assert!(r.value <= closed + 1e-9);
    }

    #[test]
    fn orthogonal_pure_states() {
        let a = PureState::basis(2, 0).projector();
        let b = PureState::basis(2, 1).projector();
        let r = fidelity_purification_search(&a, &b, &cfg()).unwrap();
        assert!(r.value.abs() < 1e-9);
    }

    #[test]
    fn matches_closed_form_on_qutrits() {
        for seed in 0..5 {
            let a = random_density_matrix(3, 3, seed);
            let b = random_density_matrix(3, 2, seed + 50);
            let r = fidelity_purification_search(&a, &b, &cfg()).unwrap();
            let f = uhlmann_fidelity(&a, &b).unwrap();
            assert!((r.value - f).abs() < 1e-4, "seed {seed}: {} vs {f}", r.value);
        }
    }

    #[test]
    fn returned_purification_reduces_to_rho2() {
        let a = random_density_matrix(2, 2, 1);
        let b = random_density_matrix(2, 2, 2);
        let r = fidelity_purification_search(&a, &b, &cfg()).unwrap();
        let red = crate::numkernel::partial_trace(
            &r.purification.projector().into_matrix(),
            (2, 2),
            crate::numkernel::Subsystem::A,
        )
        .unwrap();
        assert!((&red - b.matrix()).frobenius_norm() < 1e-8);
    }
}
