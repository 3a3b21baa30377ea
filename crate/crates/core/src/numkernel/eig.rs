//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary and then applies a real Givens rotation, so the pair
//! `(p, q)` is annihilated by `R = D(φ) G(θ)`. Sweeps visit pivots in
//! row-major order, which makes the result a deterministic function of the
//! input.

use crate::error::{Error, Result};
use crate::tolerance;

use super::matrix::{Complex, ComplexMatrix, ZERO};

const MAX_SWEEPS: usize = 100;

/// Eigenvalues sorted descending and the matching eigenvectors as columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl Spectrum {
    /// V · diag(f(λ)) · V†
    pub fn map(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.values.len();
        let mut out = ComplexMatrix::zeros(n, n);
        for (k, &lam) in self.values.iter().enumerate() {
            let w = f(lam);
            if w == 0.0 {
                continue;
            }
            for i in 0..n {
                let vik = self.vectors[(i, k)] * w;
                for j in 0..n {
                    out[(i, j)] += vik * self.vectors[(j, k)].conj();
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map(|x| x)
    }

    pub fn eigenvector(&self, k: usize) -> Vec<Complex> {
        self.vectors.column(k)
    }

    pub fn min_value(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }
}

/// Full eigendecomposition of a Hermitian matrix.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<Spectrum> {
    let n = m.require_square()?;
    let residual = m.hermitian_residual();
    if residual > tolerance::current().hermitian {
        return Err(Error::NotHermitian { residual });
    }
    Ok(jacobi(&m.hermitian_part(), n))
}

/// Eigenvalues only, descending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    hermitian_eig(m).map(|s| s.values)
}

fn off_diagonal_norm(a: &[Complex], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn jacobi(m: &ComplexMatrix, n: usize) -> Spectrum {
    let mut a = m.data().to_vec();
    let mut v = ComplexMatrix::identity(n).into_data();
    let scale = m.frobenius_norm().max(1.0);
    let threshold = tolerance::current().jacobi_off * scale;

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a, n) < threshold {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, n, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    // stable: equal eigenvalues keep their sweep order
    order.sort_by(|&x, &y| diag[y].total_cmp(&diag[x]));

    let values = order.iter().map(|&k| diag[k]).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        for i in 0..n {
            vectors[(i, col)] = v[i * n + k];
        }
    }
    Spectrum { values, vectors }
}

fn rotate(a: &mut [Complex], v: &mut [Complex], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let r = apq.norm();
    if r < 1e-300 {
        return;
    }
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    let phase = apq / r;

    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // R = diag(1, conj(phase)) · [[c, s], [-s, c]]
    let r_pp = Complex::new(c, 0.0);
    let r_pq = Complex::new(s, 0.0);
    let r_qp = -phase.conj() * s;
    let r_qq = phase.conj() * c;

    // A <- A R
    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = akp * r_pp + akq * r_qp;
        a[k * n + q] = akp * r_pq + akq * r_qq;
    }
    // A <- R† A
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = r_pp.conj() * apk + r_qp.conj() * aqk;
        a[q * n + k] = r_pq.conj() * apk + r_qq.conj() * aqk;
    }
    a[p * n + q] = ZERO;
    a[q * n + p] = ZERO;
    a[p * n + p] = Complex::new(a[p * n + p].re, 0.0);
    a[q * n + q] = Complex::new(a[q * n + q].re, 0.0);

    // V <- V R
    for k in 0..n {
        let vkp = v[k * n + p];
        let vkq = v[k * n + q];
        v[k * n + p] = vkp * r_pp + vkq * r_qp;
        v[k * n + q] = vkp * r_pq + vkq * r_qq;
    }
}

/// Clips eigenvalues in `[-psd_clip, 0)` to zero; anything more negative is an error.
pub fn clip_spectrum(values: &[f64]) -> Result<Vec<f64>> {
    let clip = tolerance::current().psd_clip;
    values
        .iter()
        .map(|&x| {
            if x < -clip {
                Err(Error::NotPsd { min_eigenvalue: x })
            } else {
                Ok(x.max(0.0))
            }
        })
        .collect()
}

/// Square root of a nonnegative eigenvalue, with values under the noise
/// floor (relative to `scale`) mapped to zero.
pub fn floored_sqrt(x: f64, scale: f64) -> f64 {
    if x <= tolerance::current().eigen_floor * scale.max(1.0) {
        0.0
    } else {
        x.sqrt()
    }
}

/// Hermitian PSD square root.
pub fn matrix_sqrt_psd(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let spec = hermitian_eig(m)?;
    clip_spectrum(&spec.values)?;
    let top = spec.values.first().copied().unwrap_or(0.0);
    Ok(spec.map(|x| floored_sqrt(x, top)).hermitian_part())
}
