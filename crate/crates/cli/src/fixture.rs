//! Fixture documents: channel ensembles and state ensembles as JSON.
//!
//! ```json
//! {
//!   "version": "qdist-fixture/1",
//!   "comment": "free text",
//!   "dimension": 2,
//!   "operations": [
//!     { "type": "unitary", "weight": 0.5, "matrix": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]] },
//!     { "type": "kraus", "weight": 0.5, "kraus": [ ... ] },
//!     { "type": "eb", "weight": 0.0, "phis": [ ... ], "psis": [ ... ] }
//!   ],
//!   "states": [
//!     { "type": "density", "weight": 0.5, "matrix": [ ... ] },
//!     { "type": "pure", "weight": 0.5, "vector": [[1, 0], [0, 0]] }
//!   ]
//! }
//! ```
//!
//! Complex numbers are `[re, im]`, matrices are row-major nested arrays.

use std::path::Path;

use anyhow::{bail, ensure, Context, Result};
use serde::{Deserialize, Serialize};

use qdist::distinguish::SU2Ensemble;
use qdist::numkernel::{Complex, ComplexMatrix, ProbVector};
use qdist::qchannel::{Channel, ChannelEnsemble, EbChannel, KrausChannel, UnitaryChannel};
use qdist::qstate::{DensityMatrix, PureState, StateEnsemble};

pub const VERSION: &str = "qdist-fixture/1";

pub type ComplexPair = [f64; 2];
pub type MatrixData = Vec<Vec<ComplexPair>>;
pub type VectorData = Vec<ComplexPair>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureFile {
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
    pub dimension: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub operations: Vec<Operation>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub states: Vec<StateRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum Operation {
    Unitary { weight: f64, matrix: MatrixData },
    Kraus { weight: f64, kraus: Vec<MatrixData> },
    Eb { weight: f64, phis: Vec<VectorData>, psis: Vec<VectorData> },
}

impl Operation {
    pub fn weight(&self) -> f64 {
        match self {
            Operation::Unitary { weight, .. } | Operation::Kraus { weight, .. } | Operation::Eb { weight, .. } => {
                *weight
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum StateRecord {
    Density { weight: f64, matrix: MatrixData },
    Pure { weight: f64, vector: VectorData },
}

impl StateRecord {
    pub fn weight(&self) -> f64 {
        match self {
            StateRecord::Density { weight, .. } | StateRecord::Pure { weight, .. } => *weight,
        }
    }
}

pub fn to_complex(p: &ComplexPair) -> Complex {
    Complex::new(p[0], p[1])
}

pub fn from_complex(z: Complex) -> ComplexPair {
    [z.re, z.im]
}

pub fn matrix_from_data(data: &MatrixData) -> Result<ComplexMatrix> {
    let rows: Vec<Vec<Complex>> = data.iter().map(|r| r.iter().map(to_complex).collect()).collect();
    Ok(ComplexMatrix::from_rows(&rows)?)
}

pub fn matrix_to_data(m: &ComplexMatrix) -> MatrixData {
    m.to_rows().into_iter().map(|r| r.into_iter().map(from_complex).collect()).collect()
}

pub fn vector_from_data(data: &VectorData) -> Vec<Complex> {
    data.iter().map(to_complex).collect()
}

pub fn vector_to_data(v: &[Complex]) -> VectorData {
    v.iter().map(|z| from_complex(*z)).collect()
}

fn square(m: ComplexMatrix, d: usize, what: &str) -> Result<ComplexMatrix> {
    ensure!(
        m.rows() == d && m.cols() == d,
        "{what} is {}x{}, fixture dimension is {d}",
        m.rows(),
        m.cols()
    );
    Ok(m)
}

impl FixtureFile {
    pub fn parse(text: &str) -> Result<Self> {
        let f: FixtureFile = serde_json::from_str(text).context("malformed fixture")?;
        ensure!(f.version == VERSION, "unsupported fixture version `{}` (expected {VERSION})", f.version);
        ensure!(f.dimension > 0, "dimension must be positive");
        Ok(f)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fixture serializes")
    }

    pub fn load(path: &Path) -> Result<(Self, Vec<u8>)> {
        let bytes = std::fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
        let text = std::str::from_utf8(&bytes).with_context(|| format!("{} is not UTF-8", path.display()))?;
        let f = Self::parse(text).with_context(|| format!("in {}", path.display()))?;
        Ok((f, bytes))
    }

    pub fn channel(&self, index: usize) -> Result<Channel> {
        let d = self.dimension;
        let op = self
            .operations
            .get(index)
            .with_context(|| format!("fixture has no operation {index}"))?;
        let ch: Channel = match op {
            Operation::Unitary { matrix, .. } => {
                let m = square(matrix_from_data(matrix)?, d, "unitary")?;
                UnitaryChannel::new(m).with_context(|| format!("operation {index}"))?.into()
            }
            Operation::Kraus { kraus, .. } => {
                let ops = kraus
                    .iter()
                    .map(|k| square(matrix_from_data(k)?, d, "Kraus operator"))
                    .collect::<Result<Vec<_>>>()?;
                KrausChannel::new(ops).with_context(|| format!("operation {index}"))?.into()
            }
            Operation::Eb { phis, psis, .. } => {
                let phis = phis
                    .iter()
                    .map(|v| {
                        ensure!(v.len() == d, "prepared state of length {}, fixture dimension is {d}", v.len());
                        Ok(PureState::new(vector_from_data(v))?)
                    })
                    .collect::<Result<Vec<_>>>()?;
                let psis: Vec<Vec<Complex>> = psis.iter().map(vector_from_data).collect();
                if let Some(bad) = psis.iter().find(|v| v.len() != d) {
                    bail!("measurement vector of length {}, fixture dimension is {d}", bad.len());
                }
                EbChannel::new(phis, psis).with_context(|| format!("operation {index}"))?.into()
            }
        };
        Ok(ch)
    }

    pub fn channels(&self) -> Result<Vec<Channel>> {
        ensure!(!self.operations.is_empty(), "fixture has no operations");
        (0..self.operations.len()).map(|i| self.channel(i)).collect()
    }

    pub fn operation_weights(&self) -> Result<ProbVector> {
        let w: Vec<f64> = self.operations.iter().map(Operation::weight).collect();
        ProbVector::new(w).context("operation weights")
    }

    pub fn ensemble(&self) -> Result<ChannelEnsemble> {
        Ok(ChannelEnsemble::new(self.operation_weights()?, self.channels()?)?)
    }

    pub fn unitaries(&self) -> Result<Vec<UnitaryChannel>> {
        self.channels()?
            .into_iter()
            .enumerate()
            .map(|(i, ch)| match ch {
                Channel::Unitary(u) => Ok(u),
                other => bail!("operation {i} is `{}`, a unitary is required", other.kind()),
            })
            .collect()
    }

    pub fn su2_ensemble(&self) -> Result<SU2Ensemble> {
        let us = self.unitaries()?.into_iter().map(|u| u.matrix().clone()).collect();
        Ok(SU2Ensemble::new(self.operation_weights()?, us)?)
    }

    pub fn density(&self, index: usize) -> Result<DensityMatrix> {
        let d = self.dimension;
        let rec = self
            .states
            .get(index)
            .with_context(|| format!("fixture has no state {index}"))?;
        let rho = match rec {
            StateRecord::Density { matrix, .. } => {
                DensityMatrix::new(square(matrix_from_data(matrix)?, d, "density matrix")?)
                    .with_context(|| format!("state {index}"))?
            }
            StateRecord::Pure { vector, .. } => {
                ensure!(vector.len() == d, "pure state of length {}, fixture dimension is {d}", vector.len());
                PureState::new(vector_from_data(vector))
                    .with_context(|| format!("state {index}"))?
                    .projector()
            }
        };
        Ok(rho)
    }

    pub fn pure(&self, index: usize) -> Result<PureState> {
        match self.states.get(index) {
            Some(StateRecord::Pure { vector, .. }) => {
                ensure!(vector.len() == self.dimension, "pure state length does not match dimension");
                Ok(PureState::new(vector_from_data(vector)).with_context(|| format!("state {index}"))?)
            }
            Some(_) => bail!("state {index} is not a pure state"),
            None => bail!("fixture has no state {index}"),
        }
    }

    pub fn densities(&self) -> Result<Vec<DensityMatrix>> {
        ensure!(!self.states.is_empty(), "fixture has no states");
        (0..self.states.len()).map(|i| self.density(i)).collect()
    }

    pub fn state_ensemble(&self) -> Result<StateEnsemble> {
        let w: Vec<f64> = self.states.iter().map(StateRecord::weight).collect();
        let w = ProbVector::new(w).context("state weights")?;
        Ok(StateEnsemble::new(w, self.densities()?)?)
    }

    /// Fixture of weighted unitary operations.
    pub fn from_unitaries(comment: Option<String>, weights: &ProbVector, us: &[ComplexMatrix]) -> Self {
        FixtureFile {
            version: VERSION.into(),
            comment,
            dimension: us.first().map_or(0, ComplexMatrix::rows),
            operations: weights
                .weights()
                .iter()
                .zip(us)
                .map(|(&weight, u)| Operation::Unitary {
                    weight,
                    matrix: matrix_to_data(u),
                })
                .collect(),
            states: Vec::new(),
        }
    }

    /// Validates every payload the fixture carries.
    pub fn validate(&self) -> Result<()> {
        if !self.operations.is_empty() {
            self.ensemble()?;
        }
        if !self.states.is_empty() {
            self.state_ensemble()?;
        }
        Ok(())
    }
}
