use crate::error::{Error, Result};
use crate::numkernel::random::{complex_gaussian, ginibre, rng_for};
use crate::numkernel::{clip_spectrum, hermitian_eig, vec_norm, Complex, ComplexMatrix, ProbVector, ONE, ZERO};
use crate::tolerance;

/// Hermitian, positive semidefinite, unit-trace operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        let tol = tolerance::current();
        mat.require_square()?;
        let residual = mat.hermitian_residual();
        if residual > tol.hermitian {
            return Err(Error::NotHermitian { residual });
        }
        let trace = mat.trace().re;
        if (trace - 1.0).abs() > tol.trace {
            return Err(Error::NotNormalized { trace });
        }
        let mat = mat.hermitian_part();
        clip_spectrum(&hermitian_eig(&mat)?.values)?;
        Ok(Self { mat })
    }

    /// Divides by the trace before validating.
    pub fn normalized(mat: ComplexMatrix) -> Result<Self> {
        let t = mat.trace().re;
        if !(t > 0.0) {
            return Err(Error::NotNormalized { trace: t });
        }
        Self::new(mat.scale_real(1.0 / t))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            mat: ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64),
        }
    }

    pub fn diagonal(probs: &[f64]) -> Result<Self> {
        Self::new(ComplexMatrix::diag_real(probs))
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    /// Eigenvalues, descending, with noise-level negatives clipped to zero.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        clip_spectrum(&hermitian_eig(&self.mat)?.values)
    }

    /// Convex combination Σ wᵢ ρᵢ.
    pub fn mixture(weights: &ProbVector, states: &[DensityMatrix]) -> Result<Self> {
        let first = states.first().ok_or(Error::EmptyEnsemble)?;
        if weights.len() != states.len() {
            return Err(Error::DimensionMismatch {
                expected: weights.len(),
                found: states.len(),
            });
        }
        let d = first.dim();
        let mut acc = ComplexMatrix::zeros(d, d);
        for (w, s) in weights.weights().iter().zip(states) {
            if s.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: s.dim(),
                });
            }
            acc = &acc + &s.mat.scale_real(*w);
        }
        Self::new(acc)
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self {
            mat: crate::numkernel::tensor_product(&self.mat, &other.mat),
        }
    }
}

impl From<&PureState> for DensityMatrix {
    fn from(psi: &PureState) -> Self {
        Self {
            mat: ComplexMatrix::outer(psi.amplitudes()),
        }
    }
}

/// Unit vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    vec: Vec<Complex>,
}

impl PureState {
    pub fn new(vec: Vec<Complex>) -> Result<Self> {
        if vec.is_empty() {
            return Err(Error::InvalidShape("empty state vector".into()));
        }
        if vec.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm = vec_norm(&vec);
        if (norm - 1.0).abs() > tolerance::current().norm {
            return Err(Error::NotNormalized { trace: norm * norm });
        }
        Ok(Self { vec })
    }

    /// Rescales a nonzero vector to unit norm.
    pub fn normalized(vec: Vec<Complex>) -> Result<Self> {
        let norm = vec_norm(&vec);
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::NotNormalized { trace: norm * norm });
        }
        Self::new(vec.into_iter().map(|z| z / norm).collect())
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim);
        let mut v = vec![ZERO; dim];
        v[index] = ONE;
        Self { vec: v }
    }

    /// (|0⟩ + |1⟩)/√2
    pub fn plus() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            vec: vec![Complex::new(h, 0.0); 2],
        }
    }

    /// (1/√d) Σᵢ |i⟩⊗|i⟩
    pub fn maximally_entangled(d: usize) -> Self {
        let mut v = vec![ZERO; d * d];
        let a = 1.0 / (d as f64).sqrt();
        for i in 0..d {
            v[i * d + i] = Complex::new(a, 0.0);
        }
        Self { vec: v }
    }

    pub fn dim(&self) -> usize {
        self.vec.len()
    }

    pub fn amplitudes(&self) -> &[Complex] {
        &self.vec
    }

    pub fn projector(&self) -> DensityMatrix {
        DensityMatrix::from(self)
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self {
            vec: crate::numkernel::tensor_vec(&self.vec, &other.vec),
        }
    }
}

/// Weighted family of states sharing one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct StateEnsemble {
    weights: ProbVector,
    states: Vec<DensityMatrix>,
}

impl StateEnsemble {
    pub fn new(weights: ProbVector, states: Vec<DensityMatrix>) -> Result<Self> {
        let first = states.first().ok_or(Error::EmptyEnsemble)?;
        if weights.len() != states.len() {
            return Err(Error::DimensionMismatch {
                expected: weights.len(),
                found: states.len(),
            });
        }
        let d = first.dim();
        if let Some(bad) = states.iter().find(|s| s.dim() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: bad.dim(),
            });
        }
        Ok(Self { weights, states })
    }

    pub fn uniform(states: Vec<DensityMatrix>) -> Result<Self> {
        let n = states.len().max(1);
        Self::new(ProbVector::uniform(n), states)
    }

    pub fn weights(&self) -> &ProbVector {
        &self.weights
    }

    pub fn states(&self) -> &[DensityMatrix] {
        &self.states
    }

    pub fn dim(&self) -> usize {
        self.states[0].dim()
    }

    pub fn average(&self) -> Result<DensityMatrix> {
        DensityMatrix::mixture(&self.weights, &self.states)
    }

    /// Applies `f` to every member, keeping the weights.
    pub fn map_states(&self, f: impl Fn(&DensityMatrix) -> Result<DensityMatrix>) -> Result<Self> {
        let states = self.states.iter().map(f).collect::<Result<Vec<_>>>()?;
        Self::new(self.weights.clone(), states)
    }

    /// {ρᵢ ⊗ σⱼ, pᵢ qⱼ}
    pub fn tensor(&self, other: &Self) -> Self {
        let states = self
            .states
            .iter()
            .flat_map(|a| other.states.iter().map(move |b| a.tensor(b)))
            .collect();
        Self {
            weights: self.weights.product(&other.weights),
            states,
        }
    }
}

/// Haar-random pure state.
pub fn random_pure_state(dim: usize, seed: u64) -> PureState {
    let mut rng = rng_for(seed, 2);
    let v: Vec<Complex> = (0..dim).map(|_| complex_gaussian(&mut rng)).collect();
    PureState::normalized(v).expect("gaussian vector is nonzero")
}

/// Random mixed state G G† / tr(G G†) with G a `dim × rank` Ginibre matrix.
pub fn random_density_matrix(dim: usize, rank: usize, seed: u64) -> DensityMatrix {
    let mut rng = rng_for(seed, 3);
    let g = ginibre(dim, rank.max(1), &mut rng);
    DensityMatrix::normalized(g.matmul(&g.adjoint())).expect("Wishart matrix is a valid state")
}
