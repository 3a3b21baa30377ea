//! Seeded property suites.
//!
//! Each suite runs `trials` independent trials; trial `t` draws everything
//! from `derive_seed(seed, t)`. A trial evaluates one or more named checks,
//! each a scalar that must not exceed its tolerance. Reports keep the worst
//! value per check so that slack as well as violations are visible.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;

use crate::distinguish::{
    dist_ops, ensemble_holevo_at, random_su2, su2_distinguishability, ProbeState, SU2Ensemble,
};
use crate::error::{Error, Result};
use crate::numkernel::{
    derive_seed, hermitian_eigenvalues, partial_trace, partial_transpose, random_hermitian, random_unitary, rng_for,
    shannon_entropy, tensor_product, ComplexMatrix, ProbVector, Subsystem,
};
use crate::optimize::OptimizerConfig;
use crate::tolerance;
use crate::qchannel::{
    apply, compose_sequential, dilate, kraus_images, random_channel, Channel, CptMap, EbChannel, KrausChannel,
};
use crate::qstate::{
    holevo_quantity, random_density_matrix, random_pure_state, uhlmann_fidelity, DensityMatrix, PureState,
    StateEnsemble,
};

/// Tolerance of the monotonicity laws.
pub const MONOTONE_TOL: f64 = 1e-8;
/// Agreement between an optimizer value and the quantity it approaches.
pub const OPTIMIZER_TOL: f64 = 1e-3;
/// Allowed shortfall of an optimizer value below a certified lower bound.
pub const OPTIMIZER_SHORTFALL: f64 = 5e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    HolevoMono,
    FidelityMono,
    Prop2,
    Prop3,
    Prop4,
    Prop8,
    Majorization,
    ChannelLaws,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::HolevoMono,
        Suite::FidelityMono,
        Suite::Prop2,
        Suite::Prop3,
        Suite::Prop4,
        Suite::Prop8,
        Suite::Majorization,
        Suite::ChannelLaws,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::HolevoMono => "holevo-mono",
            Suite::FidelityMono => "fidelity-mono",
            Suite::Prop2 => "prop2",
            Suite::Prop3 => "prop3",
            Suite::Prop4 => "prop4",
            Suite::Prop8 => "prop8",
            Suite::Majorization => "majorization",
            Suite::ChannelLaws => "channel-laws",
        }
    }

    /// Names of the checks the suite evaluates, in report order.
    pub fn checks(self) -> &'static [(&'static str, f64)] {
        match self {
            Suite::HolevoMono => &[("channel", MONOTONE_TOL), ("partial-trace", MONOTONE_TOL)],
            Suite::FidelityMono => &[("channel", MONOTONE_TOL), ("partial-trace", MONOTONE_TOL)],
            Suite::Prop2 => &[("post-processing", OPTIMIZER_TOL)],
            Suite::Prop3 => &[("subadditivity", OPTIMIZER_TOL)],
            Suite::Prop4 => &[
                ("product-probe", OPTIMIZER_SHORTFALL),
                ("optimizer-upper", OPTIMIZER_TOL),
                ("optimizer-lower", OPTIMIZER_SHORTFALL),
            ],
            Suite::Prop8 => &[
                ("bell-probe", 1e-9),
                ("optimizer", OPTIMIZER_TOL),
                ("holevo-bound", 1e-9),
                ("bell-not-better", OPTIMIZER_TOL),
            ],
            Suite::Majorization => &[("partial-sums", tolerance::MAJORIZATION)],
            Suite::ChannelLaws => &[
                ("trace", 1e-8),
                ("positivity", 1e-8),
                ("linearity", 1e-9),
                ("composition", 1e-10),
                ("dilation", 1e-9),
                ("eb-ppt", 1e-8),
            ],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckStat {
    pub name: &'static str,
    pub tolerance: f64,
    /// Largest observed value; the check fails whenever a value exceeds `tolerance`.
    pub worst: f64,
    pub failures: usize,
    pub evaluated: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub trials: usize,
    pub seed: u64,
    pub checks: Vec<CheckStat>,
    pub failed_trials: Vec<usize>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failures == 0)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().map(|c| c.failures).sum()
    }

    /// Largest amount by which any check exceeded its tolerance (0 if none did).
    pub fn worst_violation(&self) -> f64 {
        self.checks
            .iter()
            .map(|c| (c.worst - c.tolerance).max(0.0))
            .fold(0.0, f64::max)
    }
}

/// Runs a suite. `cfg` is used by the suites that call the optimizer; its
/// seed is replaced per trial.
pub fn run_suite(suite: Suite, trials: usize, seed: u64, cfg: &OptimizerConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    let per_trial: Vec<Result<Vec<f64>>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let s = derive_seed(seed, t as u64);
            let trial_cfg = OptimizerConfig { seed: s, ..*cfg };
            match suite {
                Suite::HolevoMono => holevo_mono(t, s),
                Suite::FidelityMono => fidelity_mono(t, s),
                Suite::Prop2 => prop2(t, s, &trial_cfg),
                Suite::Prop3 => prop3(t, s, &trial_cfg),
                Suite::Prop4 => prop4(s, &trial_cfg),
                Suite::Prop8 => prop8(t, s, &trial_cfg),
                Suite::Majorization => majorization(t, s),
                Suite::ChannelLaws => channel_laws(t, s),
            }
        })
        .collect();

    let mut checks: Vec<CheckStat> = suite
        .checks()
        .iter()
        .map(|&(name, tolerance)| CheckStat {
            name,
            tolerance,
            worst: f64::NEG_INFINITY,
            failures: 0,
            evaluated: 0,
        })
        .collect();
    let mut failed_trials = Vec::new();
    for (t, values) in per_trial.into_iter().enumerate() {
        let values = values?;
        let mut failed = false;
        for (c, v) in checks.iter_mut().zip(values) {
            c.evaluated += 1;
            c.worst = c.worst.max(v);
            if !(v <= c.tolerance) {
                c.failures += 1;
                failed = true;
            }
        }
        if failed {
            failed_trials.push(t);
        }
    }
    Ok(SuiteReport {
        suite,
        trials,
        seed,
        checks,
        failed_trials,
    })
}

fn random_weights(n: usize, seed: u64) -> ProbVector {
    let mut rng = rng_for(seed, 7);
    let w: Vec<f64> = (0..n).map(|_| 0.05 + rng.random::<f64>()).collect();
    ProbVector::from_unnormalized(&w).expect("positive weights")
}

fn random_states(d: usize, n: usize, seed: u64) -> Vec<DensityMatrix> {
    (0..n as u64)
        .map(|k| {
            let s = derive_seed(seed, k);
            random_density_matrix(d, 1 + (s % d as u64) as usize, s)
        })
        .collect()
}

fn random_su2_ensemble(n: usize, seed: u64) -> SU2Ensemble {
    let us = (0..n as u64).map(|k| random_su2(derive_seed(seed, k))).collect();
    SU2Ensemble::new(random_weights(n, derive_seed(seed, 99)), us).expect("Haar SU(2) elements")
}

fn reduce(rho: &DensityMatrix, dims: (usize, usize)) -> Result<DensityMatrix> {
    DensityMatrix::new(partial_trace(rho.matrix(), dims, Subsystem::A)?)
}

/// χ(E(ρᵢ)) − χ(ρᵢ) and χ(tr_B ρᵢ) − χ(ρᵢ)
fn holevo_mono(t: usize, s: u64) -> Result<Vec<f64>> {
    let d = 2 + t % 3;
    let n = 2 + (t / 3) % 3;
    let weights = random_weights(n, s);
    let ens = StateEnsemble::new(weights.clone(), random_states(d, n, derive_seed(s, 1)))?;
    let ch = random_channel(d, 1 + t % 4, derive_seed(s, 2))?;
    let before = holevo_quantity(&ens)?;
    let after = holevo_quantity(&ens.map_states(|r| apply(&ch, r))?)?;

    let dims = (2, 2 + t % 2);
    let joint = StateEnsemble::new(weights, random_states(dims.0 * dims.1, n, derive_seed(s, 3)))?;
    let reduced = joint.map_states(|r| reduce(r, dims))?;
    Ok(vec![after - before, holevo_quantity(&reduced)? - holevo_quantity(&joint)?])
}

/// F(ρ₁, ρ₂) − F(E(ρ₁), E(ρ₂)) and the same under partial trace.
fn fidelity_mono(t: usize, s: u64) -> Result<Vec<f64>> {
    let d = 2 + t % 3;
    let states = random_states(d, 2, derive_seed(s, 1));
    let ch = random_channel(d, 1 + t % 4, derive_seed(s, 2))?;
    let before = uhlmann_fidelity(&states[0], &states[1])?;
    let after = uhlmann_fidelity(&apply(&ch, &states[0])?, &apply(&ch, &states[1])?)?;

    let dims = (2, 2 + t % 2);
    let joint = random_states(dims.0 * dims.1, 2, derive_seed(s, 3));
    let f_joint = uhlmann_fidelity(&joint[0], &joint[1])?;
    let f_red = uhlmann_fidelity(&reduce(&joint[0], dims)?, &reduce(&joint[1], dims)?)?;
    Ok(vec![before - after, f_joint - f_red])
}

/// D(N ∘ E) found by search minus the closed form D(E).
fn prop2(t: usize, s: u64, cfg: &OptimizerConfig) -> Result<Vec<f64>> {
    let e = random_su2_ensemble(2 + t % 2, s);
    let post: Channel = random_channel(2, 1 + t % 4, derive_seed(s, 1))?.into();
    let (closed, _) = su2_distinguishability(&e)?;
    let found = dist_ops(&e.to_channel_ensemble().followed_by(&post)?, cfg)?;
    Ok(vec![found.value - closed])
}

/// D(E ∘ F) found by search minus D(E) + D(F), composing in either order.
fn prop3(t: usize, s: u64, cfg: &OptimizerConfig) -> Result<Vec<f64>> {
    let e = random_su2_ensemble(2, derive_seed(s, 1));
    let f = random_su2_ensemble(2, derive_seed(s, 2));
    let (de, _) = su2_distinguishability(&e)?;
    let (df, _) = su2_distinguishability(&f)?;
    let (ec, fc) = (e.to_channel_ensemble(), f.to_channel_ensemble());
    let composed = if t.is_multiple_of(2) { ec.compose(&fc)? } else { fc.compose(&ec)? };
    let found = dist_ops(&composed, cfg)?;
    Ok(vec![found.value - (de + df)])
}

/// Brackets D(E₁ ⊗ E₂) around D(E₁) + D(E₂): the product probe from below,
/// the search from both sides.
fn prop4(s: u64, cfg: &OptimizerConfig) -> Result<Vec<f64>> {
    let a = prop4_values(s, cfg)?;
    Ok(vec![a.sum - a.product_probe, a.optimizer - a.sum, a.sum - a.optimizer])
}

/// Values of one additivity spot check.
#[derive(Debug, Clone, PartialEq)]
pub struct AdditivityCheck {
    pub d1: f64,
    pub d2: f64,
    pub sum: f64,
    pub product_probe: f64,
    pub optimizer: f64,
    pub converged: bool,
}

/// Two random two-element SU(2) ensembles from `seed`, their closed forms,
/// the product of Bell probes on E₁ ⊗ E₂ and the search value on E₁ ⊗ E₂.
pub fn prop4_values(seed: u64, cfg: &OptimizerConfig) -> Result<AdditivityCheck> {
    let e1 = random_su2_ensemble(2, derive_seed(seed, 1));
    let e2 = random_su2_ensemble(2, derive_seed(seed, 2));
    let (d1, _) = su2_distinguishability(&e1)?;
    let (d2, _) = su2_distinguishability(&e2)?;
    let joint = e1.to_channel_ensemble().tensor(&e2.to_channel_ensemble())?;
    let bell = ProbeState::maximally_entangled(2);
    let product_probe = ensemble_holevo_at(&joint, &ProbeState::product(&bell, &bell))?;
    let found = dist_ops(&joint, cfg)?;
    Ok(AdditivityCheck {
        d1,
        d2,
        sum: d1 + d2,
        product_probe,
        optimizer: found.value,
        converged: found.converged,
    })
}

fn prop8(t: usize, s: u64, cfg: &OptimizerConfig) -> Result<Vec<f64>> {
    let e = random_su2_ensemble(2 + t % 3, s);
    let (closed, _) = su2_distinguishability(&e)?;
    let ce = e.to_channel_ensemble();
    let bell = ensemble_holevo_at(&ce, &ProbeState::maximally_entangled(2))?;
    let found = dist_ops(&ce, cfg)?;
    Ok(vec![
        (bell - closed).abs(),
        (found.value - closed).abs(),
        found.value - shannon_entropy(e.weights()),
        bell - found.value,
    ])
}

/// Largest shortfall of the partial sums of λ(M) below those of
/// λ(½M + ½TMT†), including the difference of totals.
fn majorization(t: usize, s: u64) -> Result<Vec<f64>> {
    let d = 2 + t % 5;
    let m = random_hermitian(d, s);
    let m = m.scale_real(1.0 / m.frobenius_norm());
    let u = random_unitary(d, derive_seed(s, 1));
    let g = (&m.scale_real(0.5) + &u.conjugate_by(&m).scale_real(0.5)).hermitian_part();
    let (lm, lg) = (hermitian_eigenvalues(&m)?, hermitian_eigenvalues(&g)?);
    let (mut sm, mut sg, mut worst) = (0.0, 0.0, f64::NEG_INFINITY);
    for k in 0..d {
        sm += lm[k];
        sg += lg[k];
        worst = worst.max(sg - sm);
    }
    worst = worst.max((sg - sm).abs());
    Ok(vec![worst])
}

fn raw_output(ch: &impl CptMap, rho: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(ch.dim_out(), ch.dim_out());
    for a in ch.kraus().ops() {
        out = &out + &a.conjugate_by(rho);
    }
    out
}

fn min_eigenvalue(m: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eigenvalues(&m.hermitian_part())?.last().copied().unwrap_or(0.0))
}

/// Random measure-and-prepare qubit channel with `m` outcomes; the
/// measurement vectors are the conjugated rows of an m × 2 isometry.
fn random_eb(m: usize, seed: u64) -> Result<EbChannel> {
    let u = random_unitary(m, seed);
    let psis = (0..m).map(|i| vec![u[(i, 0)].conj(), u[(i, 1)].conj()]).collect();
    let phis = (0..m as u64).map(|k| random_pure_state(2, derive_seed(seed, k + 1))).collect();
    EbChannel::new(phis, psis)
}

fn channel_laws(t: usize, s: u64) -> Result<Vec<f64>> {
    let d = 2 + t % 3;
    let ch = random_channel(d, 1 + t % 4, derive_seed(s, 1))?;
    let other = random_channel(d, 1 + (t / 4) % 3, derive_seed(s, 2))?;
    let rho = random_density_matrix(d, d, derive_seed(s, 3));
    let sigma = random_density_matrix(d, 1, derive_seed(s, 4));

    let out = raw_output(&ch, rho.matrix());
    let trace = (out.trace().re - 1.0).abs();

    let psi = random_pure_state(d * d, derive_seed(s, 5));
    let images = kraus_images(&ch, psi.amplitudes())?;
    let mut extended = ComplexMatrix::zeros(d * d, d * d);
    for v in &images {
        extended = &extended + &ComplexMatrix::outer(v);
    }
    let positivity = -min_eigenvalue(&extended)?;

    let a = 0.3 + 0.4 * ((s % 1000) as f64 / 1000.0);
    let mix = &rho.matrix().scale_real(a) + &sigma.matrix().scale_real(1.0 - a);
    let lin = &raw_output(&ch, &mix)
        - &(&raw_output(&ch, rho.matrix()).scale_real(a) + &raw_output(&ch, sigma.matrix()).scale_real(1.0 - a));
    let linearity = lin.frobenius_norm();

    let seq: KrausChannel = compose_sequential(&ch, &other)?;
    let composition = (&raw_output(&seq, rho.matrix()) - &raw_output(&ch, &raw_output(&other, rho.matrix())))
        .frobenius_norm();

    let (u, r) = dilate(&ch)?;
    let ancilla = PureState::basis(r, 0).projector();
    let big = u.conjugate_by(&tensor_product(rho.matrix(), ancilla.matrix()));
    let dilation = (&partial_trace(&big, (d, r), Subsystem::A)? - &out).frobenius_norm();

    let eb = random_eb(2 + t % 3, derive_seed(s, 6))?;
    let bell = PureState::maximally_entangled(2);
    let mut choi = ComplexMatrix::zeros(4, 4);
    for v in kraus_images(&eb, bell.amplitudes())? {
        choi = &choi + &ComplexMatrix::outer(&v);
    }
    let pt = partial_transpose(&choi, (2, 2), Subsystem::B)?;
    let eb_ppt = -min_eigenvalue(&pt)?;

    Ok(vec![trace, positivity, linearity, composition, dilation, eb_ppt])
}
