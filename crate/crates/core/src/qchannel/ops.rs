use crate::error::{Error, Result};
use crate::numkernel::{inner, random_unitary, tensor_product, vec_norm, Complex, ComplexMatrix, ZERO};
use crate::qstate::DensityMatrix;
use crate::tolerance;

use super::channel::{CptMap, EbChannel, KrausChannel};

fn sum_conjugations(ops: &[ComplexMatrix], rho: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(ops[0].rows(), ops[0].rows());
    for a in ops {
        out = &out + &a.conjugate_by(rho);
    }
    out
}

/// Renormalizes a channel output whose trace drifted by at most the
/// output-trace tolerance; larger drift is an error.
fn finish_output(out: ComplexMatrix) -> Result<DensityMatrix> {
    let trace = out.trace().re;
    let residual = (trace - 1.0).abs();
    if residual > tolerance::current().output_trace {
        return Err(Error::NotTracePreserving { residual });
    }
    DensityMatrix::new(out.hermitian_part().scale_real(1.0 / trace))
}

/// ρ ↦ Σ AᵢρAᵢ†
pub fn apply(ch: &impl CptMap, rho: &DensityMatrix) -> Result<DensityMatrix> {
    let k = ch.kraus();
    if rho.dim() != k.dim_in() {
        return Err(Error::DimensionMismatch {
            expected: k.dim_in(),
            found: rho.dim(),
        });
    }
    finish_output(sum_conjugations(k.ops(), rho.matrix()))
}

/// (E ⊗ I_k)(ρ) for ρ on `dim_in ⊗ k`.
pub fn apply_extended(ch: &impl CptMap, rho: &DensityMatrix) -> Result<DensityMatrix> {
    let kc = ch.kraus();
    let d = kc.dim_in();
    if !rho.dim().is_multiple_of(d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: rho.dim(),
        });
    }
    let k = rho.dim() / d;
    let id = ComplexMatrix::identity(k);
    let extended: Vec<ComplexMatrix> = kc.ops().iter().map(|a| tensor_product(a, &id)).collect();
    finish_output(sum_conjugations(&extended, rho.matrix()))
}

/// The vectors (Aⱼ ⊗ I_k)|ψ⟩ for ψ on `dim_in ⊗ k`; the output state is
/// Σⱼ |vⱼ⟩⟨vⱼ|.
pub fn kraus_images(ch: &impl CptMap, psi: &[Complex]) -> Result<Vec<Vec<Complex>>> {
    let kc = ch.kraus();
    let (d_in, d_out) = (kc.dim_in(), kc.dim_out());
    if !psi.len().is_multiple_of(d_in) {
        return Err(Error::DimensionMismatch {
            expected: d_in,
            found: psi.len(),
        });
    }
    let k = psi.len() / d_in;
    Ok(kc
        .ops()
        .iter()
        .map(|a| {
            let mut out = vec![ZERO; d_out * k];
            for o in 0..d_out {
                for i in 0..d_in {
                    let x = a[(o, i)];
                    if x == ZERO {
                        continue;
                    }
                    for b in 0..k {
                        out[o * k + b] += x * psi[i * k + b];
                    }
                }
            }
            out
        })
        .collect())
}

/// E ∘ F (apply `f` first): Kraus set {AᵢBⱼ}.
pub fn compose_sequential(e: &impl CptMap, f: &impl CptMap) -> Result<KrausChannel> {
    let (ek, fk) = (e.kraus(), f.kraus());
    if fk.dim_out() != ek.dim_in() {
        return Err(Error::DimensionMismatch {
            expected: ek.dim_in(),
            found: fk.dim_out(),
        });
    }
    let ops = ek
        .ops()
        .iter()
        .flat_map(|a| fk.ops().iter().map(move |b| a.matmul(b)))
        .collect();
    KrausChannel::new(ops)
}

/// E ⊗ F: Kraus set {Aᵢ ⊗ Bⱼ}.
pub fn compose_tensor(e: &impl CptMap, f: &impl CptMap) -> KrausChannel {
    let ops = e
        .kraus()
        .ops()
        .iter()
        .flat_map(|a| f.kraus().ops().iter().map(move |b| tensor_product(a, b)))
        .collect();
    KrausChannel::from_ops_unchecked(ops)
}

/// Kraus form Aᵢ = |φᵢ⟩⟨ψᵢ| of a measure-and-prepare channel.
pub fn eb_to_kraus(ch: &EbChannel) -> KrausChannel {
    ch.kraus().clone()
}

/// Stinespring dilation of a channel with `dim_in = dim_out = d` and Kraus
/// rank r: a unitary U on `d ⊗ r` with U(|ψ⟩⊗|0⟩) = Σₖ Aₖ|ψ⟩⊗|k⟩. The
/// remaining columns complete the isometry using standard basis vectors in
/// index order.
pub fn dilate(ch: &impl CptMap) -> Result<(ComplexMatrix, usize)> {
    let kc = ch.kraus();
    let d = kc.dim_in();
    if kc.dim_out() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: kc.dim_out(),
        });
    }
    let r = kc.rank();
    let n = d * r;

    let isometry: Vec<Vec<Complex>> = (0..d)
        .map(|j| {
            let mut col = vec![ZERO; n];
            for (k, a) in kc.ops().iter().enumerate() {
                for i in 0..d {
                    col[i * r + k] = a[(i, j)];
                }
            }
            col
        })
        .collect();

    let mut extension: Vec<Vec<Complex>> = Vec::new();
    for e in 0..n {
        if isometry.len() + extension.len() == n {
            break;
        }
        let mut v = vec![ZERO; n];
        v[e] = Complex::new(1.0, 0.0);
        for _ in 0..2 {
            for b in isometry.iter().chain(&extension) {
                let c = inner(b, &v);
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= c * y;
                }
            }
        }
        let norm = vec_norm(&v);
        if norm > 1e-6 {
            extension.push(v.into_iter().map(|z| z / norm).collect());
        }
    }

    let mut columns = Vec::with_capacity(n);
    let mut ext = extension.into_iter();
    for c in 0..n {
        if c % r == 0 {
            columns.push(isometry[c / r].clone());
        } else {
            columns.push(ext.next().ok_or_else(|| Error::Inconsistent("isometry completion ran short".into()))?);
        }
    }
    let u = ComplexMatrix::from_columns(&columns);
    let residual = u.unitarity_residual();
    if residual > 1e-8 {
        return Err(Error::NotUnitary { residual });
    }
    Ok((u, r))
}

/// Random channel of the given Kraus rank: the first `d` columns of a Haar
/// unitary on `d·rank`, cut into `rank` blocks of `d` rows.
pub fn random_channel(d: usize, rank: usize, seed: u64) -> Result<KrausChannel> {
    if d == 0 || rank == 0 || rank > d * d {
        return Err(Error::InvalidConfig(format!("rank {rank} outside 1..={}", d * d)));
    }
    let u = random_unitary(d * rank, seed);
    let ops = (0..rank)
        .map(|k| {
            let mut a = ComplexMatrix::zeros(d, d);
            for i in 0..d {
                for j in 0..d {
                    a[(i, j)] = u[(k * d + i, j)];
                }
            }
            a
        })
        .collect();
    KrausChannel::new(ops)
}
