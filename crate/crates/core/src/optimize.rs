//! Multi-start projected gradient search over products of unit spheres.
//!
//! The search variable is a real vector split into blocks; each block is
//! kept on its own unit sphere. Gradients come from central finite
//! differences of the objective, are projected onto the tangent space of
//! each block and normalized, and a step is accepted only if it improves the
//! objective (the step grows after an accepted move and halves after a
//! rejected one). A restart stops when the step underflows, when the
//! improvement over the last `WINDOW` iterations falls below `tol`, or after
//! `max_iters` gradient evaluations.
//!
//! Restart `k` draws its starting point from the stream `(seed, k)`, so the
//! outcome does not depend on how restarts are scheduled across threads.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numkernel::random::{random_unit_vector, rng_for};

const WINDOW: usize = 10;
const MIN_STEP: f64 = 1e-12;
const MAX_STEP: f64 = 1.0;
const GROWTH: f64 = 1.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub max_iters: usize,
    pub step_init: f64,
    pub tol: f64,
    pub seed: u64,
    pub fd_step: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            restarts: 64,
            max_iters: 2000,
            step_init: 0.1,
            tol: 1e-7,
            seed: 0,
            fd_step: 1e-5,
        }
    }
}

impl OptimizerConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidConfig(what.to_string()));
        if self.restarts == 0 {
            return bad("restarts must be positive");
        }
        if self.max_iters == 0 {
            return bad("max_iters must be positive");
        }
        if !(self.step_init > 0.0) || !self.step_init.is_finite() {
            return bad("step_init must be positive");
        }
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return bad("tol must lie in (0, 1)");
        }
        if !(self.fd_step > 0.0) || !self.fd_step.is_finite() {
            return bad("fd_step must be positive");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Goal {
    Maximize,
    Minimize,
}

/// How a reported value relates to the true optimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    /// Value attained by some feasible point of a maximization.
    Lower,
    /// Value attained by some feasible point of a minimization.
    Upper,
    /// Certified by a closed form.
    Exact,
}

impl BoundKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundKind::Lower => "lower",
            BoundKind::Upper => "upper",
            BoundKind::Exact => "exact",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RestartOutcome {
    pub value: f64,
    pub point: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub best: usize,
    pub restarts: Vec<RestartOutcome>,
}

impl SearchOutcome {
    pub fn best(&self) -> &RestartOutcome {
        &self.restarts[self.best]
    }

    pub fn values(&self) -> Vec<f64> {
        self.restarts.iter().map(|r| r.value).collect()
    }

    pub fn converged_count(&self) -> usize {
        self.restarts.iter().filter(|r| r.converged).count()
    }
}

/// Normalizes each block in place. Blocks of zero norm are left untouched.
pub fn normalize_blocks(x: &mut [f64], blocks: &[usize]) {
    let mut start = 0;
    for &len in blocks {
        let b = &mut x[start..start + len];
        let n = b.iter().map(|v| v * v).sum::<f64>().sqrt();
        if n > 0.0 {
            b.iter_mut().for_each(|v| *v /= n);
        }
        start += len;
    }
}

/// Runs `cfg.restarts` independent searches and returns all of them with the
/// index of the best (lowest index wins ties). `objective` receives points
/// with every block normalized and must be finite there.
pub fn multi_start<F>(blocks: &[usize], goal: Goal, cfg: &OptimizerConfig, objective: F) -> Result<SearchOutcome>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    cfg.validate()?;
    if blocks.is_empty() || blocks.contains(&0) {
        return Err(Error::InvalidConfig("empty search block".into()));
    }
    let sign = match goal {
        Goal::Maximize => 1.0,
        Goal::Minimize => -1.0,
    };
    let signed = |x: &[f64]| sign * objective(x);

    let restarts: Vec<RestartOutcome> = (0..cfg.restarts)
        .into_par_iter()
        .map(|k| {
            let mut rng = rng_for(cfg.seed, k as u64);
            let start: Vec<f64> = blocks.iter().flat_map(|&len| random_unit_vector(len, &mut rng)).collect();
            let mut r = ascend(start, blocks, cfg, &signed);
            r.value *= sign;
            r
        })
        .collect();

    let mut best = 0;
    for (k, r) in restarts.iter().enumerate() {
        let better = match goal {
            Goal::Maximize => r.value > restarts[best].value,
            Goal::Minimize => r.value < restarts[best].value,
        };
        if better {
            best = k;
        }
    }
    Ok(SearchOutcome { best, restarts })
}

/// Single ascent from `x`, maximizing `f`.
fn ascend<F>(mut x: Vec<f64>, blocks: &[usize], cfg: &OptimizerConfig, f: &F) -> RestartOutcome
where
    F: Fn(&[f64]) -> f64,
{
    let n = x.len();
    let mut fx = f(&x);
    let mut step = cfg.step_init;
    let mut history: std::collections::VecDeque<f64> = std::collections::VecDeque::with_capacity(WINDOW + 1);
    let mut converged = false;
    let mut iterations = 0;
    let mut probe = vec![0.0; n];
    let mut grad = vec![0.0; n];
    let mut candidate = vec![0.0; n];

    while iterations < cfg.max_iters {
        iterations += 1;

        for j in 0..n {
            probe.copy_from_slice(&x);
            probe[j] += cfg.fd_step;
            normalize_blocks(&mut probe, blocks);
            let up = f(&probe);
            probe.copy_from_slice(&x);
            probe[j] -= cfg.fd_step;
            normalize_blocks(&mut probe, blocks);
            let down = f(&probe);
            grad[j] = (up - down) / (2.0 * cfg.fd_step);
        }
        project_tangent(&mut grad, &x, blocks);
        let gnorm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
        if !(gnorm > 1e-14) {
            converged = true;
            break;
        }

        let mut accepted = false;
        while step >= MIN_STEP {
            for j in 0..n {
                candidate[j] = x[j] + step * grad[j] / gnorm;
            }
            normalize_blocks(&mut candidate, blocks);
            let fc = f(&candidate);
            if fc > fx {
                x.copy_from_slice(&candidate);
                fx = fc;
                step = (step * GROWTH).min(MAX_STEP);
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            converged = true;
            break;
        }

        history.push_back(fx);
        if history.len() > WINDOW {
            let old = history.pop_front().unwrap_or(fx);
            if fx - old < cfg.tol {
                converged = true;
                break;
            }
        }
    }

    RestartOutcome {
        value: fx,
        point: x,
        iterations,
        converged,
    }
}

fn project_tangent(g: &mut [f64], x: &[f64], blocks: &[usize]) {
    let mut start = 0;
    for &len in blocks {
        let range = start..start + len;
        let dot: f64 = g[range.clone()].iter().zip(&x[range.clone()]).map(|(a, b)| a * b).sum();
        for j in range {
            g[j] -= dot * x[j];
        }
        start += len;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> OptimizerConfig {
        OptimizerConfig {
            restarts: 8,
            ..OptimizerConfig::default()
        }
    }

    #[test]
    fn rayleigh_quotient_maximum() {
        // max of xᵀAx on the sphere is the largest eigenvalue
        let diag = [1.0, 3.0, 2.0, -1.0];
        let r = multi_start(&[4], Goal::Maximize, &quick(), |x| {
            x.iter().zip(&diag).map(|(v, a)| a * v * v).sum()
        })
        .unwrap();
        assert!((r.best().value - 3.0).abs() < 1e-6);
        assert!(r.best().converged);
    }

    #[test]
    fn minimization_and_blocks() {
        let r = multi_start(&[2, 3], Goal::Minimize, &quick(), |x| x[0] + x[2] + x[3]).unwrap();
        // min x0 on circle = -1, min (x2 + x3) on sphere = -√2
        assert!((r.best().value + 1.0 + 2f64.sqrt()).abs() < 1e-6);
        let p = &r.best().point;
        assert!(((p[0] * p[0] + p[1] * p[1]) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn deterministic_per_seed() {
        let f = |x: &[f64]| (3.0 * x[0]).sin() * x[1] + x[2] * x[2];
        let a = multi_start(&[3], Goal::Maximize, &quick(), f).unwrap();
        let b = multi_start(&[3], Goal::Maximize, &quick(), f).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_invalid_config() {
        let cfg = OptimizerConfig {
            restarts: 0,
            ..OptimizerConfig::default()
        };
        assert!(multi_start(&[2], Goal::Maximize, &cfg, |x| x[0]).is_err());
        let cfg = OptimizerConfig {
            tol: 1.5,
            ..OptimizerConfig::default()
        };
        assert!(cfg.validate().is_err());
        assert!(multi_start(&[], Goal::Maximize, &quick(), |_| 0.0).is_err());
    }

    #[test]
    fn nonsmooth_minimum_is_approached() {
        // |x0| has a kink at its minimum
        let r = multi_start(&[3], Goal::Minimize, &quick(), |x| x[0].abs()).unwrap();
        assert!(r.best().value < 1e-6);
    }
}
