use crate::error::{Error, Result};
use crate::optimize::OptimizerConfig;
use crate::qchannel::{compose_tensor, CptMap, KrausChannel};

use super::probe::fidelity_ops;
use super::result::OptimizationResult;

/// A minimized fidelity above this counts as "not perfectly distinguishable".
pub const DISTINGUISHABLE_FLOOR: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct EbCheckReport {
    pub copies: usize,
    /// Upper bound on the fidelity of the n-fold channels.
    pub min_fidelity: f64,
    pub not_perfectly_distinguishable: bool,
    pub result: OptimizationResult,
}

fn power(e: &impl CptMap, n: usize) -> KrausChannel {
    let mut out = e.kraus().clone();
    for _ in 1..n {
        out = compose_tensor(&out, e);
    }
    out
}

/// Minimizes the output fidelity of E₁^{⊗n} against E₂^{⊗n} over probes,
/// for n = 1 or 2. Numerical evidence only: the value is an upper bound.
pub fn eb_finite_copy_check(e1: &impl CptMap, e2: &impl CptMap, n: usize, cfg: &OptimizerConfig) -> Result<EbCheckReport> {
    if !(1..=2).contains(&n) {
        return Err(Error::InvalidConfig(format!("copies must be 1 or 2, got {n}")));
    }
    if e1.dim_in() != 2 || e2.dim_in() != 2 {
        return Err(Error::InvalidShape("finite-copy check takes qubit channels".into()));
    }
    let result = fidelity_ops(&power(e1, n), &power(e2, n), cfg)?;
    Ok(EbCheckReport {
        copies: n,
        min_fidelity: result.value,
        not_perfectly_distinguishable: result.value > DISTINGUISHABLE_FLOOR,
        result,
    })
}
