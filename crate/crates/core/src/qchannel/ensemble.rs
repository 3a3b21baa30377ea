use crate::error::{Error, Result};
use crate::numkernel::{tensor_product, ProbVector};

use super::channel::{Channel, CptMap, UnitaryChannel};
use super::ops::{compose_sequential, compose_tensor};

/// Weighted list of channels sharing input and output dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelEnsemble {
    weights: ProbVector,
    channels: Vec<Channel>,
}

impl ChannelEnsemble {
    pub fn new(weights: ProbVector, channels: Vec<Channel>) -> Result<Self> {
        let first = channels.first().ok_or(Error::EmptyEnsemble)?;
        if weights.len() != channels.len() {
            return Err(Error::DimensionMismatch {
                expected: weights.len(),
                found: channels.len(),
            });
        }
        let (din, dout) = (first.dim_in(), first.dim_out());
        for ch in &channels {
            if ch.dim_in() != din {
                return Err(Error::DimensionMismatch {
                    expected: din,
                    found: ch.dim_in(),
                });
            }
            if ch.dim_out() != dout {
                return Err(Error::DimensionMismatch {
                    expected: dout,
                    found: ch.dim_out(),
                });
            }
        }
        Ok(Self { weights, channels })
    }

    pub fn uniform(channels: Vec<Channel>) -> Result<Self> {
        let n = channels.len().max(1);
        Self::new(ProbVector::uniform(n), channels)
    }

    pub fn weights(&self) -> &ProbVector {
        &self.weights
    }

    pub fn channels(&self) -> &[Channel] {
        &self.channels
    }

    pub fn len(&self) -> usize {
        self.channels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.channels.is_empty()
    }

    pub fn dim_in(&self) -> usize {
        self.channels[0].dim_in()
    }

    pub fn dim_out(&self) -> usize {
        self.channels[0].dim_out()
    }

    /// Same channels with a different prior.
    pub fn with_weights(&self, weights: ProbVector) -> Result<Self> {
        Self::new(weights, self.channels.clone())
    }

    /// E ∘ F = {Eᵢ ∘ Fⱼ, pᵢ qⱼ}, with `other` applied first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let mut channels = Vec::with_capacity(self.len() * other.len());
        for e in &self.channels {
            for f in &other.channels {
                channels.push(sequential(e, f)?);
            }
        }
        Self::new(self.weights.product(&other.weights), channels)
    }

    /// E₁ ⊗ E₂ = {Eᵢ ⊗ Fⱼ, pᵢ qⱼ}.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let channels = self
            .channels
            .iter()
            .flat_map(|e| other.channels.iter().map(move |f| tensor(e, f)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.weights.product(&other.weights), channels)
    }

    /// Applies `post` after every member: {N ∘ Eᵢ, pᵢ}.
    pub fn followed_by(&self, post: &Channel) -> Result<Self> {
        let channels = self
            .channels
            .iter()
            .map(|e| sequential(post, e))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.weights.clone(), channels)
    }
}

/// e ∘ f, staying unitary when both factors are.
fn sequential(e: &Channel, f: &Channel) -> Result<Channel> {
    if let (Some(a), Some(b)) = (e.as_unitary(), f.as_unitary()) {
        if a.dim() == b.dim() {
            return Ok(UnitaryChannel::new(a.matrix().matmul(b.matrix()))?.into());
        }
    }
    Ok(compose_sequential(e, f)?.into())
}

fn tensor(e: &Channel, f: &Channel) -> Result<Channel> {
    if let (Some(a), Some(b)) = (e.as_unitary(), f.as_unitary()) {
        return Ok(UnitaryChannel::new(tensor_product(a.matrix(), b.matrix()))?.into());
    }
    Ok(compose_tensor(e, f).into())
}
