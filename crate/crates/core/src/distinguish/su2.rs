use crate::error::{Error, Result};
use crate::numkernel::{random_unitary, Complex, ComplexMatrix, ProbVector, ZERO};
use crate::qchannel::{Channel, ChannelEnsemble, UnitaryChannel};
use crate::qstate::measures::spectrum_entropy;
use crate::numkernel::hermitian_eigenvalues;
use crate::tolerance;

/// Weighted qubit unitaries of determinant one.
#[derive(Debug, Clone, PartialEq)]
pub struct SU2Ensemble {
    weights: ProbVector,
    unitaries: Vec<ComplexMatrix>,
}

impl SU2Ensemble {
    pub fn new(weights: ProbVector, unitaries: Vec<ComplexMatrix>) -> Result<Self> {
        if unitaries.is_empty() {
            return Err(Error::EmptyEnsemble);
        }
        if weights.len() != unitaries.len() {
            return Err(Error::DimensionMismatch {
                expected: weights.len(),
                found: unitaries.len(),
            });
        }
        for u in &unitaries {
            check_su2(u)?;
        }
        Ok(Self { weights, unitaries })
    }

    pub fn uniform(unitaries: Vec<ComplexMatrix>) -> Result<Self> {
        Self::new(ProbVector::uniform(unitaries.len().max(1)), unitaries)
    }

    pub fn weights(&self) -> &ProbVector {
        &self.weights
    }

    pub fn unitaries(&self) -> &[ComplexMatrix] {
        &self.unitaries
    }

    pub fn len(&self) -> usize {
        self.unitaries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.unitaries.is_empty()
    }

    pub fn to_channel_ensemble(&self) -> ChannelEnsemble {
        let channels = self
            .unitaries
            .iter()
            .map(|u| Channel::from(UnitaryChannel::new(u.clone()).expect("checked at construction")))
            .collect();
        ChannelEnsemble::new(self.weights.clone(), channels).expect("shared dimension")
    }

    /// tr(Uᵢ†Uⱼ)/2
    pub fn overlap(&self, i: usize, j: usize) -> Complex {
        half_trace_overlap(&self.unitaries[i], &self.unitaries[j])
    }

    /// Pairwise |tr(Uᵢ†Uⱼ)/2| in the order (0,1), (0,2), …, (1,2), …
    pub fn pairwise_overlaps(&self) -> Vec<f64> {
        let n = self.len();
        let mut out = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                out.push(self.overlap(i, j).norm());
            }
        }
        out
    }
}

fn check_su2(u: &ComplexMatrix) -> Result<()> {
    if u.rows() != 2 || u.cols() != 2 {
        return Err(Error::InvalidShape(format!("SU(2) element must be 2x2, got {}x{}", u.rows(), u.cols())));
    }
    let tol = tolerance::current();
    let residual = u.unitarity_residual();
    if residual > tol.unitary {
        return Err(Error::NotUnitary { residual });
    }
    let residual = (u.determinant()? - Complex::new(1.0, 0.0)).norm();
    if residual > tol.determinant {
        return Err(Error::NotSpecialUnitary { residual });
    }
    Ok(())
}

fn half_trace_overlap(a: &ComplexMatrix, b: &ComplexMatrix) -> Complex {
    let mut s = ZERO;
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            s += a[(r, c)].conj() * b[(r, c)];
        }
    }
    s * 0.5
}

/// D(U) = S(G) with Gᵢⱼ = √(pᵢpⱼ)·tr(Uᵢ†Uⱼ)/2; returns the value and G.
pub fn su2_distinguishability(ensemble: &SU2Ensemble) -> Result<(f64, ComplexMatrix)> {
    let n = ensemble.len();
    let p = ensemble.weights().weights();
    let mut g = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            g[(i, j)] = ensemble.overlap(i, j) * (p[i] * p[j]).sqrt();
        }
    }
    let g = g.hermitian_part();
    let value = spectrum_entropy(&hermitian_eigenvalues(&g)?)?;
    Ok((value, g))
}

/// Haar-random element of SU(2): a Haar unitary divided by a square root of
/// its determinant.
pub fn random_su2(seed: u64) -> ComplexMatrix {
    let u = random_unitary(2, seed);
    let det = u.determinant().expect("square");
    u.scale(Complex::from_polar(1.0, -det.arg() / 2.0))
}

/// [[a, b·e^{−iθ}], [−b·e^{iθ}, a]] with a, b ≥ 0 and a² + b² = 1.
fn real_rotation(a: f64, b: f64, theta: f64) -> ComplexMatrix {
    let off = Complex::from_polar(b, -theta);
    ComplexMatrix::from_rows(&[vec![Complex::new(a, 0.0), off], vec![-off.conj(), Complex::new(a, 0.0)]])
        .expect("finite entries")
}

/// Three uniform unitaries I, U₂, U₃ with pairwise |tr/2| = 1/√2, 1/√3, 1/4.
/// U₃ carries the phase α with cos α = √3/4 − 1/√2, sin α ≥ 0.
pub fn ex3_u() -> SU2Ensemble {
    let cos_a = 3f64.sqrt() / 4.0 - 0.5f64.sqrt();
    let alpha = cos_a.acos();
    let u2 = real_rotation(0.5f64.sqrt(), 0.5f64.sqrt(), 0.0);
    let u3 = real_rotation((1.0f64 / 3.0).sqrt(), (2.0f64 / 3.0).sqrt(), alpha);
    SU2Ensemble::uniform(vec![ComplexMatrix::identity(2), u2, u3]).expect("fixture is in SU(2)")
}

/// Three uniform unitaries with pairwise |tr/2| = 1/√2.1, 1/√3.1, 0, where
/// cos β = −1/√(2.1·1.1), sin β ≥ 0.
pub fn ex3_v() -> SU2Ensemble {
    let cos_b = -1.0 / (2.1f64 * 1.1).sqrt();
    let beta = cos_b.acos();
    let v2 = real_rotation((1.0 / 2.1f64).sqrt(), (1.1 / 2.1f64).sqrt(), 0.0);
    let v3 = real_rotation((1.0 / 3.1f64).sqrt(), (2.1 / 3.1f64).sqrt(), beta);
    SU2Ensemble::uniform(vec![ComplexMatrix::identity(2), v2, v3]).expect("fixture is in SU(2)")
}
