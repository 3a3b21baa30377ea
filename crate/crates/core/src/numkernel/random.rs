//! Seeded random matrices. Every generator takes an explicit seed; nothing
//! reads ambient randomness.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::matrix::{inner, vec_norm, Complex, ComplexMatrix};

/// Deterministic generator for `(seed, stream)`. Distinct streams are
/// independent, so restart `k` of a search can use stream `k` no matter
/// which thread runs it.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Standard complex Gaussian (real and imaginary parts N(0, 1/2)).
pub fn complex_gaussian(rng: &mut impl Rng) -> Complex {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn ginibre(rows: usize, cols: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let data = (0..rows * cols).map(|_| complex_gaussian(rng)).collect();
    ComplexMatrix::from_vec_unchecked(rows, cols, data)
}

/// Modified Gram-Schmidt on the columns. Columns that are (numerically)
/// dependent on earlier ones are replaced by the first standard basis vector
/// that extends the span.
pub fn orthonormalize_columns(m: &ComplexMatrix) -> ComplexMatrix {
    let rows = m.rows();
    let mut basis: Vec<Vec<Complex>> = Vec::with_capacity(m.cols());
    for j in 0..m.cols() {
        let candidate = project_out(m.column(j), &basis);
        let v = if vec_norm(&candidate) > 1e-10 {
            candidate
        } else {
            (0..rows)
                .map(|e| {
                    let mut unit = vec![Complex::new(0.0, 0.0); rows];
                    unit[e] = Complex::new(1.0, 0.0);
                    project_out(unit, &basis)
                })
                .find(|v| vec_norm(v) > 1e-6)
                .expect("more columns than rows")
        };
        let norm = vec_norm(&v);
        basis.push(v.into_iter().map(|z| z / norm).collect());
    }
    ComplexMatrix::from_columns(&basis)
}

fn project_out(mut v: Vec<Complex>, basis: &[Vec<Complex>]) -> Vec<Complex> {
    // two passes keep orthogonality at machine precision
    for _ in 0..2 {
        for b in basis {
            let c = inner(b, &v);
            for (x, y) in v.iter_mut().zip(b) {
                *x -= c * y;
            }
        }
    }
    v
}

/// Haar-random unitary: Gram-Schmidt QR of a complex Ginibre matrix. The
/// triangular factor produced by Gram-Schmidt has a positive real diagonal,
/// which is the phase normalization that makes the law of Q left-invariant.
pub fn random_unitary(d: usize, seed: u64) -> ComplexMatrix {
    assert!(d >= 1, "dimension must be positive");
    let mut rng = rng_for(seed, 0);
    orthonormalize_columns(&ginibre(d, d, &mut rng))
}

/// Random Hermitian matrix (GUE-like), used by property suites.
pub fn random_hermitian(d: usize, seed: u64) -> ComplexMatrix {
    let mut rng = rng_for(seed, 1);
    ginibre(d, d, &mut rng).hermitian_part()
}

/// Uniform point on the unit sphere of `R^n`.
pub fn random_unit_vector(n: usize, rng: &mut impl Rng) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// Combines a base seed with an index into a new seed (splitmix64 finalizer).
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
