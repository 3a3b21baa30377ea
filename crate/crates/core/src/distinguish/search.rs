//! Randomized searches for ordering effects.
//!
//! Trial `t` of a search draws all of its randomness from seeds derived from
//! `(seed, t)`, so hit lists are reproducible and independent of scheduling.

use rayon::prelude::*;

use crate::error::Result;
use crate::numkernel::{derive_seed, ProbVector};
use crate::qstate::{holevo_quantity, random_density_matrix, random_pure_state, uhlmann_fidelity, DensityMatrix, StateEnsemble};

use super::su2::{ex3_u, ex3_v, random_su2, su2_distinguishability, SU2Ensemble};

/// Strict margin required of every inequality in a hit.
pub const MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub seed: u64,
    pub trials: usize,
}

/// Two ensembles where every pair of `more` is less distinguishable than the
/// matching pair of `less`, yet `more` as a whole is more distinguishable.
#[derive(Debug, Clone, PartialEq)]
pub struct ParadoxHit {
    pub trial: Option<usize>,
    pub more: SU2Ensemble,
    pub less: SU2Ensemble,
    pub d_more: f64,
    pub d_less: f64,
    pub overlaps_more: Vec<f64>,
    pub overlaps_less: Vec<f64>,
}

/// Checks the paradox inequalities for `(u, v)`. Larger |tr/2| means a pair
/// is harder to tell apart.
pub fn paradox_holds(u: &SU2Ensemble, v: &SU2Ensemble) -> Result<Option<ParadoxHit>> {
    if u.len() != v.len() {
        return Ok(None);
    }
    let (ou, ov) = (u.pairwise_overlaps(), v.pairwise_overlaps());
    if !ou.iter().zip(&ov).all(|(a, b)| *a >= b + MARGIN) {
        return Ok(None);
    }
    let (du, _) = su2_distinguishability(u)?;
    let (dv, _) = su2_distinguishability(v)?;
    if du < dv + MARGIN {
        return Ok(None);
    }
    Ok(Some(ParadoxHit {
        trial: None,
        more: u.clone(),
        less: v.clone(),
        d_more: du,
        d_less: dv,
        overlaps_more: ou,
        overlaps_less: ov,
    }))
}

/// The bundled three-unitary pair, checked against the paradox inequalities.
pub fn verify_ex3() -> Result<Option<ParadoxHit>> {
    paradox_holds(&ex3_u(), &ex3_v())
}

fn random_triple(seed: u64) -> SU2Ensemble {
    let us = (0..3).map(|k| random_su2(derive_seed(seed, k))).collect();
    SU2Ensemble::uniform(us).expect("Haar SU(2) elements")
}

/// Samples pairs of uniform Haar SU(2) triples and keeps those showing the
/// paradox in either order.
pub fn paradox_search(cfg: &SearchConfig) -> Result<Vec<ParadoxHit>> {
    let per_trial: Vec<Result<Vec<ParadoxHit>>> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let a = random_triple(derive_seed(cfg.seed, 2 * t as u64));
            let b = random_triple(derive_seed(cfg.seed, 2 * t as u64 + 1));
            let mut hits = Vec::new();
            for (x, y) in [(&a, &b), (&b, &a)] {
                if let Some(mut h) = paradox_holds(x, y)? {
                    h.trial = Some(t);
                    hits.push(h);
                }
            }
            Ok(hits)
        })
        .collect();
    let mut out = Vec::new();
    for r in per_trial {
        out.extend(r?);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderSearchConfig {
    pub seed: u64,
    pub trials: usize,
    pub pure_only: bool,
}

/// Two uniform two-state ensembles on which fidelity and Holevo quantity
/// order distinguishability oppositely: `first` has the lower fidelity (more
/// distinguishable) but also the lower Holevo quantity (less distinguishable).
#[derive(Debug, Clone, PartialEq)]
pub struct OrderWitness {
    pub trial: usize,
    pub first: [DensityMatrix; 2],
    pub second: [DensityMatrix; 2],
    pub fidelity_first: f64,
    pub fidelity_second: f64,
    pub holevo_first: f64,
    pub holevo_second: f64,
}

impl OrderWitness {
    /// Recomputes both measures and checks both margins.
    pub fn recheck(&self) -> Result<bool> {
        let (f1, c1) = measures(&self.first)?;
        let (f2, c2) = measures(&self.second)?;
        Ok(f1 + MARGIN <= f2 && c1 + MARGIN <= c2)
    }
}

fn measures(pair: &[DensityMatrix; 2]) -> Result<(f64, f64)> {
    let f = uhlmann_fidelity(&pair[0], &pair[1])?;
    let ens = StateEnsemble::new(ProbVector::uniform(2), pair.to_vec())?;
    Ok((f, holevo_quantity(&ens)?))
}

fn random_qubit(seed: u64, pure_only: bool) -> DensityMatrix {
    if pure_only {
        random_pure_state(2, seed).projector()
    } else {
        random_density_matrix(2, 2, seed)
    }
}

/// Best-effort search for [`OrderWitness`]es among random qubit ensembles.
pub fn order_disagreement_search(cfg: &OrderSearchConfig) -> Result<Vec<OrderWitness>> {
    let per_trial: Vec<Result<Vec<OrderWitness>>> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let s = derive_seed(cfg.seed, t as u64);
            let draw = |k: u64| random_qubit(derive_seed(s, k), cfg.pure_only);
            let a = [draw(0), draw(1)];
            let b = [draw(2), draw(3)];
            let (fa, ca) = measures(&a)?;
            let (fb, cb) = measures(&b)?;
            let mut hits = Vec::new();
            if fa + MARGIN <= fb && ca + MARGIN <= cb {
                hits.push(witness(t, a, b, fa, fb, ca, cb));
            } else if fb + MARGIN <= fa && cb + MARGIN <= ca {
                hits.push(witness(t, b, a, fb, fa, cb, ca));
            }
            Ok(hits)
        })
        .collect();
    let mut out = Vec::new();
    for r in per_trial {
        out.extend(r?);
    }
    Ok(out)
}

fn witness(
    trial: usize,
    first: [DensityMatrix; 2],
    second: [DensityMatrix; 2],
    fidelity_first: f64,
    fidelity_second: f64,
    holevo_first: f64,
    holevo_second: f64,
) -> OrderWitness {
    OrderWitness {
        trial,
        first,
        second,
        fidelity_first,
        fidelity_second,
        holevo_first,
        holevo_second,
    }
}
