use crate::error::{Error, Result};
use crate::tolerance;

/// Probability vector. Slightly negative weights (down to `-prob_clip`) are
/// clipped to zero on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVector(Vec<f64>);

impl ProbVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        let tol = tolerance::current();
        if weights.is_empty() {
            return Err(Error::InvalidProbability("empty".into()));
        }
        let mut clipped = Vec::with_capacity(weights.len());
        for w in weights {
            if !w.is_finite() {
                return Err(Error::NonFinite);
            }
            if w < -tol.prob_clip {
                return Err(Error::InvalidProbability(format!("negative weight {w}")));
            }
            clipped.push(w.max(0.0));
        }
        let sum: f64 = clipped.iter().sum();
        if (sum - 1.0).abs() > tol.prob_sum {
            return Err(Error::InvalidProbability(format!("weights sum to {sum}")));
        }
        Ok(Self(clipped))
    }

    pub fn uniform(n: usize) -> Self {
        assert!(n > 0);
        Self(vec![1.0 / n as f64; n])
    }

    /// Normalizes nonnegative weights (used for parameterized priors).
    pub fn from_unnormalized(weights: &[f64]) -> Result<Self> {
        let sum: f64 = weights.iter().sum();
        if !(sum > 0.0) || weights.iter().any(|&w| w < 0.0) {
            return Err(Error::InvalidProbability("cannot normalize".into()));
        }
        Self::new(weights.iter().map(|w| w / sum).collect())
    }

    pub fn weights(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Outer product distribution `p_i q_j` in row-major order.
    pub fn product(&self, other: &Self) -> Self {
        Self(
            self.0
                .iter()
                .flat_map(|&p| other.0.iter().map(move |&q| p * q))
                .collect(),
        )
    }
}

/// Shannon entropy in bits, with `0 log 0 = 0`.
pub fn shannon_entropy(p: &ProbVector) -> f64 {
    entropy_bits(p.weights())
}

/// −Σ x log₂ x over the positive entries.
pub(crate) fn entropy_bits(values: &[f64]) -> f64 {
    let h: f64 = values
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -x * x.log2())
        .sum();
    h.max(0.0)
}

/// `p ≻ q`: every partial sum of descending-sorted `p` dominates that of `q`.
pub fn majorizes(p: &ProbVector, q: &ProbVector) -> bool {
    majorizes_spectra(p.weights(), q.weights())
}

/// Majorization for arbitrary real vectors (e.g. spectra of Hermitian
/// matrices). The shorter vector is zero-padded; totals must agree.
pub fn majorizes_spectra(p: &[f64], q: &[f64]) -> bool {
    let slack = tolerance::current().majorization;
    let n = p.len().max(q.len());
    let sorted = |v: &[f64]| {
        let mut s = v.to_vec();
        s.resize(n, 0.0);
        s.sort_by(|a, b| b.total_cmp(a));
        s
    };
    let (ps, qs) = (sorted(p), sorted(q));
    let (mut sp, mut sq) = (0.0, 0.0);
    for k in 0..n {
        sp += ps[k];
        sq += qs[k];
        if sp < sq - slack {
            return false;
        }
    }
    (sp - sq).abs() <= slack
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pv(v: &[f64]) -> ProbVector {
        ProbVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn construction_rules() {
        assert_eq!(pv(&[1.0, -1e-13]).weights(), &[1.0, 0.0]);
        assert!(ProbVector::new(vec![1.1, -0.1]).is_err());
        assert!(ProbVector::new(vec![0.5, 0.4]).is_err());
        assert!(ProbVector::new(vec![]).is_err());
        assert!(ProbVector::new(vec![f64::NAN, 1.0]).is_err());
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(shannon_entropy(&pv(&[1.0, 0.0])), 0.0);
        assert!((shannon_entropy(&pv(&[0.5, 0.5])) - 1.0).abs() < 1e-15);
        assert!((shannon_entropy(&pv(&[0.25; 4])) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn majorization_examples() {
        assert!(majorizes(&pv(&[1.0, 0.0]), &pv(&[0.5, 0.5])));
        assert!(!majorizes(&pv(&[0.5, 0.5]), &pv(&[1.0, 0.0])));
        assert!(majorizes(&pv(&[0.3, 0.3, 0.4]), &pv(&[0.3, 0.3, 0.4])));
    }

    #[test]
    fn majorization_zero_pads() {
        assert!(majorizes(&pv(&[1.0]), &pv(&[0.5, 0.5])));
        assert!(!majorizes(&pv(&[0.5, 0.5]), &pv(&[1.0])));
    }

    #[test]
    fn unequal_totals_do_not_majorize() {
        assert!(!majorizes_spectra(&[2.0, 0.0], &[0.5, 0.5]));
    }

    fn simplex(n: usize) -> impl Strategy<Value = ProbVector> {
        proptest::collection::vec(0.0f64..1.0, n).prop_filter_map("zero", |v| {
            let s: f64 = v.iter().sum();
            (s > 1e-6).then(|| ProbVector::from_unnormalized(&v).unwrap())
        })
    }

    proptest! {
        #[test]
        fn reflexive(p in simplex(5)) {
            prop_assert!(majorizes(&p, &p));
        }

        #[test]
        fn transitive(p in simplex(4), q in simplex(4), r in simplex(4)) {
            if majorizes(&p, &q) && majorizes(&q, &r) {
                prop_assert!(majorizes(&p, &r));
            }
        }

        #[test]
        fn antisymmetric_up_to_sorting(p in simplex(3), q in simplex(3)) {
            if majorizes(&p, &q) && majorizes(&q, &p) {
                let mut a = p.weights().to_vec();
                let mut b = q.weights().to_vec();
                a.sort_by(|x, y| x.total_cmp(y));
                b.sort_by(|x, y| x.total_cmp(y));
                for (x, y) in a.iter().zip(&b) {
                    prop_assert!((x - y).abs() <= 1e-12);
                }
            }
        }

        #[test]
        fn schur_concave(p in simplex(4), q in simplex(4)) {
            if majorizes(&p, &q) {
                prop_assert!(shannon_entropy(&p) <= shannon_entropy(&q) + 1e-12);
            }
        }

        #[test]
        fn mixing_is_majorized(p in simplex(4), t in 0.0f64..1.0) {
            // convex combination with a permutation of itself
            let w = p.weights();
            let rev: Vec<f64> = w.iter().rev().copied().collect();
            let mix: Vec<f64> = w.iter().zip(&rev).map(|(a, b)| t * a + (1.0 - t) * b).collect();
            let m = ProbVector::new(mix).unwrap();
            prop_assert!(majorizes(&p, &m));
            prop_assert!(shannon_entropy(&m) >= shannon_entropy(&p) - 1e-12);
        }

        #[test]
        fn entropy_bounds(p in simplex(6)) {
            let h = shannon_entropy(&p);
            prop_assert!(h >= 0.0 && h <= (6f64).log2() + 1e-12);
        }
    }
}
