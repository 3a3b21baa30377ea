//! Probe-state searches: D(E), channel fidelity and capacity.
//!
//! Output states are never formed as matrices. For a probe ψ the output of a
//! channel with Kraus set {Aⱼ} is Σⱼ |vⱼ⟩⟨vⱼ| with vⱼ = (Aⱼ ⊗ I)ψ, so every
//! entropy is taken from the Gram matrix of those vectors and every fidelity
//! from the trace norm of V†W.

use crate::error::{Error, Result};
use crate::numkernel::{Complex, ComplexMatrix, ProbVector};
use crate::optimize::{multi_start, BoundKind, Goal, OptimizerConfig};
use crate::qchannel::{kraus_images, Channel, ChannelEnsemble, CptMap};
use crate::qstate::fidelity_from_factors;
use crate::qstate::measures::entropy_of_vectors;

use super::result::{point_to_vector, OptimizationResult, ProbeState};

/// χ({(Eᵢ ⊗ I)(φ), pᵢ})
pub fn ensemble_holevo_at(ensemble: &ChannelEnsemble, probe: &ProbeState) -> Result<f64> {
    if probe.dim_in() != ensemble.dim_in() {
        return Err(Error::DimensionMismatch {
            expected: ensemble.dim_in() * ensemble.dim_in(),
            found: probe.amplitudes().len(),
        });
    }
    holevo_at(ensemble.weights().weights(), ensemble.channels(), probe.amplitudes())
}

fn holevo_at(weights: &[f64], channels: &[Channel], psi: &[Complex]) -> Result<f64> {
    let mut all = Vec::new();
    let mut mean = 0.0;
    for (&p, ch) in weights.iter().zip(channels) {
        if p <= 0.0 {
            continue;
        }
        let images = kraus_images(ch, psi)?;
        mean += p * entropy_of_vectors(&images)?;
        let s = p.sqrt();
        all.extend(images.into_iter().map(|v| v.into_iter().map(|z| z * s).collect::<Vec<_>>()));
    }
    Ok((entropy_of_vectors(&all)? - mean).max(0.0))
}

/// Lower bound on D(E) = max over probes of the output Holevo quantity.
pub fn dist_ops(ensemble: &ChannelEnsemble, cfg: &OptimizerConfig) -> Result<OptimizationResult> {
    let d = ensemble.dim_in();
    let weights = ensemble.weights().weights();
    let channels = ensemble.channels();
    let search = multi_start(&[2 * d * d], Goal::Maximize, cfg, |x| {
        holevo_at(weights, channels, &point_to_vector(x)).unwrap_or(f64::NEG_INFINITY)
    })?;
    let best = search.best();
    let probe = ProbeState::from_point(&best.point, d)?;
    let value = ensemble_holevo_at(ensemble, &probe)?;
    Ok(OptimizationResult::from_search(&search, probe, value, BoundKind::Lower))
}

fn output_factor(ch: &impl CptMap, psi: &[Complex]) -> Result<ComplexMatrix> {
    Ok(ComplexMatrix::from_columns(&kraus_images(ch, psi)?))
}

/// F((E₁ ⊗ I)(φ), (E₂ ⊗ I)(φ)) for a single probe.
pub fn channel_fidelity_at(e1: &impl CptMap, e2: &impl CptMap, probe: &ProbeState) -> Result<f64> {
    check_same_dims(e1, e2)?;
    if probe.dim_in() != e1.dim_in() {
        return Err(Error::DimensionMismatch {
            expected: e1.dim_in() * e1.dim_in(),
            found: probe.amplitudes().len(),
        });
    }
    fidelity_from_factors(&output_factor(e1, probe.amplitudes())?, &output_factor(e2, probe.amplitudes())?)
}

fn check_same_dims(e1: &impl CptMap, e2: &impl CptMap) -> Result<()> {
    if e1.dim_in() != e2.dim_in() {
        return Err(Error::DimensionMismatch {
            expected: e1.dim_in(),
            found: e2.dim_in(),
        });
    }
    if e1.dim_out() != e2.dim_out() {
        return Err(Error::DimensionMismatch {
            expected: e1.dim_out(),
            found: e2.dim_out(),
        });
    }
    Ok(())
}

/// Upper bound on F(E₁, E₂) = min over probes of the output fidelity.
pub fn fidelity_ops<A, B>(e1: &A, e2: &B, cfg: &OptimizerConfig) -> Result<OptimizationResult>
where
    A: CptMap + Sync,
    B: CptMap + Sync,
{
    check_same_dims(e1, e2)?;
    let d = e1.dim_in();
    let search = multi_start(&[2 * d * d], Goal::Minimize, cfg, |x| {
        let psi = point_to_vector(x);
        let f = || fidelity_from_factors(&output_factor(e1, &psi)?, &output_factor(e2, &psi)?);
        f().unwrap_or(f64::INFINITY)
    })?;
    let probe = ProbeState::from_point(&search.best().point, d)?;
    let value = channel_fidelity_at(e1, e2, &probe)?;
    Ok(OptimizationResult::from_search(&search, probe, value, BoundKind::Upper))
}

/// Lower bound on the capacity of a channel set: joint ascent over the prior
/// (pᵢ = yᵢ² for y on the unit sphere) and the probe.
pub fn capacity(channels: &[Channel], cfg: &OptimizerConfig) -> Result<OptimizationResult> {
    // validates shared dimensions
    let ensemble = ChannelEnsemble::uniform(channels.to_vec())?;
    let d = ensemble.dim_in();
    let n = channels.len();
    let split = 2 * d * d;
    let prior_of = |y: &[f64]| -> Vec<f64> {
        let total: f64 = y.iter().map(|v| v * v).sum();
        y.iter().map(|v| v * v / total).collect()
    };
    let search = multi_start(&[split, n], Goal::Maximize, cfg, |x| {
        let (probe, y) = x.split_at(split);
        holevo_at(&prior_of(y), channels, &point_to_vector(probe)).unwrap_or(f64::NEG_INFINITY)
    })?;
    let best = search.best();
    let (point, y) = best.point.split_at(split);
    let probe = ProbeState::from_point(point, d)?;
    let prior = ProbVector::from_unnormalized(&prior_of(y))?;
    let value = ensemble_holevo_at(&ensemble.with_weights(prior.clone())?, &probe)?;
    let mut result = OptimizationResult::from_search(&search, probe, value, BoundKind::Lower);
    result.prior = Some(prior);
    Ok(result)
}
