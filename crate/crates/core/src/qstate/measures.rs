//! Entropies, Holevo quantity, Uhlmann fidelity, purification and the Gram
//! matrix of a pure-state ensemble. All entropies are in bits.

use crate::error::{Error, Result};
use crate::numkernel::prob::entropy_bits;
use crate::numkernel::eig::floored_sqrt;
use crate::numkernel::{clip_spectrum, hermitian_eig, inner, matrix_sqrt_psd, Complex, ComplexMatrix, ProbVector, ZERO};

use super::state::{DensityMatrix, PureState, StateEnsemble};

/// S(ρ) = −tr ρ log₂ ρ
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    Ok(entropy_bits(&rho.eigenvalues()?))
}

/// Entropy of a Hermitian PSD matrix given by its spectrum, clipping noise.
pub(crate) fn spectrum_entropy(values: &[f64]) -> Result<f64> {
    Ok(entropy_bits(&clip_spectrum(values)?))
}

/// χ = S(Σ pᵢ ρᵢ) − Σ pᵢ S(ρᵢ)
pub fn holevo_quantity(ensemble: &StateEnsemble) -> Result<f64> {
    let avg = von_neumann_entropy(&ensemble.average()?)?;
    let mut mean = 0.0;
    for (p, rho) in ensemble.weights().weights().iter().zip(ensemble.states()) {
        if *p > 0.0 {
            mean += p * von_neumann_entropy(rho)?;
        }
    }
    Ok((avg - mean).max(0.0))
}

/// F(ρ₁, ρ₂) = tr[(√ρ₁ ρ₂ √ρ₁)^{1/2}], clipped into [0, 1].
pub fn uhlmann_fidelity(rho1: &DensityMatrix, rho2: &DensityMatrix) -> Result<f64> {
    if rho1.dim() != rho2.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho1.dim(),
            found: rho2.dim(),
        });
    }
    let s = matrix_sqrt_psd(rho1.matrix())?;
    let inner_op = s.matmul(rho2.matrix()).matmul(&s).hermitian_part();
    let values = hermitian_eig(&inner_op)?.values;
    let f = sum_of_roots(&values);
    Ok(f.clamp(0.0, 1.0))
}

/// Fidelity of ρ₁ = V V† and ρ₂ = W W† given the factors, as the trace norm
/// of V†W (sum of square roots of the eigenvalues of (V†W)†(V†W)).
pub fn fidelity_from_factors(v: &ComplexMatrix, w: &ComplexMatrix) -> Result<f64> {
    if v.rows() != w.rows() {
        return Err(Error::DimensionMismatch {
            expected: v.rows(),
            found: w.rows(),
        });
    }
    let m = v.adjoint().matmul(w);
    let gram = if m.rows() <= m.cols() {
        m.matmul(&m.adjoint())
    } else {
        m.adjoint().matmul(&m)
    };
    let values = hermitian_eig(&gram.hermitian_part())?.values;
    Ok(sum_of_roots(&values).clamp(0.0, 1.0))
}

fn sum_of_roots(values: &[f64]) -> f64 {
    let top = values.first().copied().unwrap_or(0.0);
    values.iter().map(|&x| floored_sqrt(x, top)).sum()
}

/// F(φ, ψ) = |⟨φ|ψ⟩|
pub fn fidelity_pure(phi: &PureState, psi: &PureState) -> Result<f64> {
    if phi.dim() != psi.dim() {
        return Err(Error::DimensionMismatch {
            expected: phi.dim(),
            found: psi.dim(),
        });
    }
    Ok(inner(phi.amplitudes(), psi.amplitudes()).norm().min(1.0))
}

/// Canonical purification Σₐ √λₐ |vₐ⟩⊗|a⟩ on `dim ⊗ dim`, with the ancilla
/// basis indexed by descending eigenvalue.
pub fn purify(rho: &DensityMatrix) -> Result<PureState> {
    let d = rho.dim();
    let spec = hermitian_eig(rho.matrix())?;
    let values = clip_spectrum(&spec.values)?;
    let mut amp = vec![ZERO; d * d];
    for (a, &lam) in values.iter().enumerate() {
        let s = lam.sqrt();
        for i in 0..d {
            amp[i * d + a] = spec.vectors[(i, a)] * s;
        }
    }
    PureState::normalized(amp)
}

/// Mᵢⱼ = √(pᵢpⱼ) ⟨φᵢ|φⱼ⟩
pub fn gram_matrix(weights: &ProbVector, states: &[PureState]) -> Result<ComplexMatrix> {
    if weights.len() != states.len() {
        return Err(Error::DimensionMismatch {
            expected: weights.len(),
            found: states.len(),
        });
    }
    let d = states.first().ok_or(Error::EmptyEnsemble)?.dim();
    if let Some(bad) = states.iter().find(|s| s.dim() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: bad.dim(),
        });
    }
    let scaled: Vec<Vec<Complex>> = weights
        .weights()
        .iter()
        .zip(states)
        .map(|(p, s)| s.amplitudes().iter().map(|z| z * p.sqrt()).collect())
        .collect();
    Ok(vector_gram(&scaled))
}

/// Gᵢⱼ = ⟨vᵢ|vⱼ⟩ for arbitrary (unnormalized) vectors.
pub(crate) fn vector_gram(vectors: &[Vec<Complex>]) -> ComplexMatrix {
    let n = vectors.len();
    let mut g = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let z = inner(&vectors[i], &vectors[j]);
            g[(i, j)] = z;
            g[(j, i)] = z.conj();
        }
        g[(i, i)] = Complex::new(g[(i, i)].re, 0.0);
    }
    g
}

/// Spectrum of Σₖ |vₖ⟩⟨vₖ|, computed from whichever of the Gram matrix or the
/// outer-product sum is smaller. Both share their nonzero eigenvalues.
pub(crate) fn spectrum_of_vectors(vectors: &[Vec<Complex>]) -> Result<Vec<f64>> {
    let dim = vectors.first().map_or(0, Vec::len);
    if vectors.is_empty() || dim == 0 {
        return Ok(Vec::new());
    }
    let m = if vectors.len() <= dim {
        vector_gram(vectors)
    } else {
        let mut acc = ComplexMatrix::zeros(dim, dim);
        for v in vectors {
            acc = &acc + &ComplexMatrix::outer(v);
        }
        acc.hermitian_part()
    };
    Ok(hermitian_eig(&m)?.values)
}

/// Entropy of Σₖ |vₖ⟩⟨vₖ| in bits.
pub(crate) fn entropy_of_vectors(vectors: &[Vec<Complex>]) -> Result<f64> {
    spectrum_entropy(&spectrum_of_vectors(vectors)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::{partial_trace, Subsystem};
    use crate::qstate::state::{random_density_matrix, random_pure_state};

    const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn ket0() -> PureState {
        PureState::basis(2, 0)
    }
    fn ket1() -> PureState {
        PureState::basis(2, 1)
    }

    /// Binary entropy evaluated directly, as an oracle independent of the eigensolver.
    fn h2(p: f64) -> f64 {
        -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
    }

    #[test]
    fn entropy_examples() {
        assert!(von_neumann_entropy(&random_pure_state(3, 1).projector()).unwrap().abs() < 1e-12);
        assert!((von_neumann_entropy(&DensityMatrix::maximally_mixed(2)).unwrap() - 1.0).abs() < 1e-15);
        let p = (1.0 + H) / 2.0;
        let expected = h2(p);
        assert!((expected - 0.6009).abs() < 1e-3);
        let rho = DensityMatrix::diagonal(&[p, 1.0 - p]).unwrap();
        assert!((von_neumann_entropy(&rho).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn holevo_examples() {
        let r = random_density_matrix(2, 2, 5);
        let same = StateEnsemble::new(ProbVector::new(vec![0.3, 0.7]).unwrap(), vec![r.clone(), r]).unwrap();
        assert!(holevo_quantity(&same).unwrap().abs() < 1e-12);

        let orth = StateEnsemble::uniform(vec![ket0().projector(), ket1().projector()]).unwrap();
        assert!((holevo_quantity(&orth).unwrap() - 1.0).abs() < 1e-12);

        let nonorth = StateEnsemble::uniform(vec![ket0().projector(), PureState::plus().projector()]).unwrap();
        let chi = holevo_quantity(&nonorth).unwrap();
        assert!((chi - h2((1.0 + H) / 2.0)).abs() < 1e-12);
        assert!((chi - 0.6009).abs() < 1e-3);
    }

    #[test]
    fn fidelity_examples() {
        let r = random_density_matrix(3, 3, 9);
        assert!((uhlmann_fidelity(&r, &r).unwrap() - 1.0).abs() < 1e-9);
        assert!(uhlmann_fidelity(&ket0().projector(), &ket1().projector()).unwrap().abs() < 1e-12);
        let a = DensityMatrix::diagonal(&[0.5, 0.5]).unwrap();
        let b = DensityMatrix::diagonal(&[0.8, 0.2]).unwrap();
        let bhattacharyya = (0.5f64 * 0.8).sqrt() + (0.5f64 * 0.2).sqrt();
        assert!((uhlmann_fidelity(&a, &b).unwrap() - bhattacharyya).abs() < 1e-12);
        assert!((bhattacharyya - 0.94868).abs() < 1e-5);
    }

    #[test]
    fn fidelity_dimension_mismatch() {
        let a = DensityMatrix::maximally_mixed(2);
        let b = DensityMatrix::maximally_mixed(3);
        assert!(matches!(uhlmann_fidelity(&a, &b), Err(Error::DimensionMismatch { .. })));
        assert!(fidelity_pure(&ket0(), &PureState::basis(3, 0)).is_err());
    }

    #[test]
    fn pure_fidelity_examples() {
        assert!((fidelity_pure(&ket0(), &ket0()).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(fidelity_pure(&ket0(), &ket1()).unwrap(), 0.0);
        assert!((fidelity_pure(&ket0(), &PureState::plus()).unwrap() - H).abs() < 1e-12);
    }

    #[test]
    fn fidelity_symmetry_and_pure_consistency() {
        for seed in 0..100 {
            let a = random_density_matrix(3, 1 + seed as usize % 3, seed);
            let b = random_density_matrix(3, 3, seed + 1000);
            let f1 = uhlmann_fidelity(&a, &b).unwrap();
            let f2 = uhlmann_fidelity(&b, &a).unwrap();
            assert!((f1 - f2).abs() <= 1e-9, "seed {seed}: {f1} vs {f2}");

            let p = random_pure_state(3, seed);
            let q = random_pure_state(3, seed + 7);
            let fp = fidelity_pure(&p, &q).unwrap();
            let fu = uhlmann_fidelity(&p.projector(), &q.projector()).unwrap();
            assert!((fp - fu).abs() <= 1e-9, "seed {seed}: {fp} vs {fu}");
        }
    }

    #[test]
    fn factor_route_matches_spectral_route() {
        for seed in 0..100 {
            let d = 2 + seed as usize % 3;
            let mut rng = crate::numkernel::rng_for(seed, 9);
            let v = crate::numkernel::random::ginibre(d, 2, &mut rng);
            let w = crate::numkernel::random::ginibre(d, 3, &mut rng);
            let nv = v.frobenius_norm();
            let nw = w.frobenius_norm();
            let v = v.scale_real(1.0 / nv);
            let w = w.scale_real(1.0 / nw);
            let r1 = DensityMatrix::new(v.matmul(&v.adjoint())).unwrap();
            let r2 = DensityMatrix::new(w.matmul(&w.adjoint())).unwrap();
            let spectral = uhlmann_fidelity(&r1, &r2).unwrap();
            let factored = fidelity_from_factors(&v, &w).unwrap();
            assert!((spectral - factored).abs() < 1e-9, "seed {seed}");
        }
    }

    #[test]
    fn purification_examples() {
        let phi = purify(&DensityMatrix::maximally_mixed(2)).unwrap();
        let reduced = partial_trace(&phi.projector().into_matrix(), (2, 2), Subsystem::A).unwrap();
        assert!((&reduced - &ComplexMatrix::identity(2).scale_real(0.5)).frobenius_norm() < 1e-12);
        let anc = partial_trace(&phi.projector().into_matrix(), (2, 2), Subsystem::B).unwrap();
        assert!((&anc - &ComplexMatrix::identity(2).scale_real(0.5)).frobenius_norm() < 1e-12);

        let p0 = purify(&ket0().projector()).unwrap();
        assert!((p0.amplitudes()[0].norm() - 1.0).abs() < 1e-12);

        let d = purify(&DensityMatrix::diagonal(&[0.8, 0.2]).unwrap()).unwrap();
        let a = d.amplitudes();
        assert!((a[0] - Complex::new(0.8f64.sqrt(), 0.0)).norm() < 1e-12);
        assert!((a[3] - Complex::new(0.2f64.sqrt(), 0.0)).norm() < 1e-12);
        assert!(a[1].norm() < 1e-15 && a[2].norm() < 1e-15);
    }

    #[test]
    fn purification_recovers_random_states() {
        for seed in 0..50 {
            let rho = random_density_matrix(4, 1 + seed as usize % 4, seed);
            let psi = purify(&rho).unwrap();
            let back = partial_trace(&psi.projector().into_matrix(), (4, 4), Subsystem::A).unwrap();
            assert!((&back - rho.matrix()).frobenius_norm() < 1e-8);
        }
    }

    #[test]
    fn gram_examples() {
        let p = ProbVector::new(vec![0.2, 0.3, 0.5]).unwrap();
        let basis: Vec<PureState> = (0..3).map(|i| PureState::basis(3, i)).collect();
        let g = gram_matrix(&p, &basis).unwrap();
        assert!((&g - &ComplexMatrix::diag_real(&[0.2, 0.3, 0.5])).frobenius_norm() < 1e-15);

        let same = vec![PureState::plus(); 3];
        let g = gram_matrix(&p, &same).unwrap();
        let vals = hermitian_eig(&g).unwrap().values;
        assert!((vals[0] - 1.0).abs() < 1e-12 && vals[1].abs() < 1e-12 && vals[2].abs() < 1e-12);

        let g = gram_matrix(&ProbVector::uniform(2), &[ket0(), PureState::plus()]).unwrap();
        assert!((g[(0, 0)] - Complex::new(0.5, 0.0)).norm() < 1e-15);
        assert!((g[(0, 1)] - Complex::new(0.5 * H, 0.0)).norm() < 1e-15);
        let vals = hermitian_eig(&g).unwrap().values;
        assert!((vals[0] - (1.0 + H) / 2.0).abs() < 1e-12);
        assert!((vals[1] - (1.0 - H) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn gram_spectrum_matches_average_state() {
        for seed in 0..100 {
            let n = 2 + seed as usize % 4;
            let d = 2 + seed as usize % 3;
            let states: Vec<PureState> = (0..n).map(|k| random_pure_state(d, seed * 31 + k as u64)).collect();
            let p = ProbVector::uniform(n);
            let g = gram_matrix(&p, &states).unwrap();
            let mut gv: Vec<f64> = hermitian_eig(&g).unwrap().values;
            let mut avg = ComplexMatrix::zeros(d, d);
            for s in &states {
                avg = &avg + &ComplexMatrix::outer(s.amplitudes()).scale_real(1.0 / n as f64);
            }
            let mut av = hermitian_eig(&avg).unwrap().values;
            gv.retain(|x| x.abs() > 1e-9);
            av.retain(|x| x.abs() > 1e-9);
            assert_eq!(gv.len(), av.len(), "seed {seed}");
            for (a, b) in gv.iter().zip(&av) {
                assert!((a - b).abs() < 1e-9, "seed {seed}");
            }
        }
    }

    #[test]
    fn gram_rejects_mismatch() {
        assert!(gram_matrix(&ProbVector::uniform(2), &[ket0()]).is_err());
        assert!(gram_matrix(&ProbVector::uniform(2), &[ket0(), PureState::basis(3, 0)]).is_err());
    }
}
