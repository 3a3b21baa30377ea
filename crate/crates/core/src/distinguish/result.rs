use crate::error::{Error, Result};
use crate::numkernel::{Complex, ProbVector, ZERO};
use crate::optimize::{BoundKind, SearchOutcome};
use crate::qstate::PureState;

/// Pure probe state on `d ⊗ d`: the system the channels act on, entangled
/// with an ancilla of the same dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeState {
    dim_in: usize,
    state: PureState,
}

impl ProbeState {
    pub fn new(state: PureState, dim_in: usize) -> Result<Self> {
        if state.dim() != dim_in * dim_in {
            return Err(Error::DimensionMismatch {
                expected: dim_in * dim_in,
                found: state.dim(),
            });
        }
        Ok(Self { dim_in, state })
    }

    pub fn maximally_entangled(d: usize) -> Self {
        Self {
            dim_in: d,
            state: PureState::maximally_entangled(d),
        }
    }

    /// Product of probes for two factors, reordered from `(A₁B₁)(A₂B₂)` to
    /// `(A₁A₂)(B₁B₂)` so that it probes a tensor-product channel on `A₁A₂`.
    pub fn product(first: &ProbeState, second: &ProbeState) -> Self {
        let (d1, d2) = (first.dim_in, second.dim_in);
        let d = d1 * d2;
        let mut amp = vec![ZERO; d * d];
        let (x, y) = (first.state.amplitudes(), second.state.amplitudes());
        for a1 in 0..d1 {
            for b1 in 0..d1 {
                for a2 in 0..d2 {
                    for b2 in 0..d2 {
                        let sys = a1 * d2 + a2;
                        let anc = b1 * d2 + b2;
                        amp[sys * d + anc] = x[a1 * d1 + b1] * y[a2 * d2 + b2];
                    }
                }
            }
        }
        Self {
            dim_in: d,
            state: PureState::normalized(amp).expect("product of unit vectors"),
        }
    }

    /// Probe from a point of the real search sphere (pairs of re, im).
    pub(crate) fn from_point(point: &[f64], dim_in: usize) -> Result<Self> {
        Self::new(PureState::normalized(point_to_vector(point))?, dim_in)
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn state(&self) -> &PureState {
        &self.state
    }

    pub fn amplitudes(&self) -> &[Complex] {
        self.state.amplitudes()
    }
}

pub(crate) fn point_to_vector(point: &[f64]) -> Vec<Complex> {
    point.chunks(2).map(|c| Complex::new(c[0], c[1])).collect()
}

/// Best value of a probe-state search with its diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationResult {
    pub value: f64,
    pub probe: ProbeState,
    pub restarts_run: usize,
    /// Whether the restart that produced `value` met a stopping criterion
    /// before `max_iters`.
    pub converged: bool,
    pub converged_restarts: usize,
    pub per_restart_values: Vec<f64>,
    pub bound: BoundKind,
    /// Optimized prior, for capacity searches.
    pub prior: Option<ProbVector>,
    pub total_iterations: usize,
}

impl OptimizationResult {
    pub(crate) fn from_search(search: &SearchOutcome, probe: ProbeState, value: f64, bound: BoundKind) -> Self {
        Self {
            value,
            probe,
            restarts_run: search.restarts.len(),
            converged: search.best().converged,
            converged_restarts: search.converged_count(),
            per_restart_values: search.values(),
            bound,
            prior: None,
            total_iterations: search.restarts.iter().map(|r| r.iterations).sum(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::inner;

    #[test]
    fn probe_dimension_is_checked() {
        assert!(ProbeState::new(PureState::basis(4, 0), 2).is_ok());
        assert!(ProbeState::new(PureState::basis(3, 0), 2).is_err());
    }

    #[test]
    fn product_of_bell_states_is_maximally_entangled_on_four() {
        let b = ProbeState::maximally_entangled(2);
        let p = ProbeState::product(&b, &b);
        let m = ProbeState::maximally_entangled(4);
        assert!((inner(p.amplitudes(), m.amplitudes()).norm() - 1.0).abs() < 1e-14);
    }
}
