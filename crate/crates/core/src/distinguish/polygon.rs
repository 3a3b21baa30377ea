//! Eigenphase geometry of a unitary pair.
//!
//! For unitary channels the minimum output overlap over probes is the
//! distance from the origin to the convex hull of the eigenvalues of U₁†U₂.
//! Copy counts follow from the width Θ of the smallest arc holding the
//! eigenphases: N copies spread them over NΘ.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::numkernel::{hermitian_eig, inner, vec_norm, Complex, ComplexMatrix};
use crate::qchannel::UnitaryChannel;

/// Largest N for which the explicit hull cross-check is run.
const CROSS_CHECK_LIMIT: u64 = 100_000;

/// Eigenvalues of a unitary, from a generic Hermitian combination of its
/// commuting parts (U + U†)/2 and (U − U†)/2i. The eigenvectors of that
/// combination diagonalize U unless two distinct eigenphases collide on it,
/// which the residual check catches; another mixing angle is then tried.
pub fn unitary_eigenvalues(u: &ComplexMatrix) -> Result<Vec<Complex>> {
    let n = u.require_square()?;
    let residual = u.unitarity_residual();
    if residual > crate::tolerance::current().unitary {
        return Err(Error::NotUnitary { residual });
    }
    let ud = u.adjoint();
    let re_part = (u + &ud).scale_real(0.5);
    let im_part = (u - &ud).scale(Complex::new(0.0, -0.5));
    for c in [0.577_215_664_901_532_9, 1.618_033_988_749_895, -0.302_775_637_731_994_6, 2.414_213_562_373_095] {
        let k = (&re_part + &im_part.scale_real(c)).hermitian_part();
        let spec = hermitian_eig(&k)?;
        let mut values = Vec::with_capacity(n);
        let mut worst: f64 = 0.0;
        for j in 0..n {
            let v = spec.eigenvector(j);
            let uv = u.mul_vec(&v);
            let lam = inner(&v, &uv);
            let r: Vec<Complex> = uv.iter().zip(&v).map(|(a, b)| a - lam * b).collect();
            worst = worst.max(vec_norm(&r));
            values.push(lam / lam.norm());
        }
        if worst <= 1e-9 {
            return Ok(values);
        }
    }
    Err(Error::Inconsistent("unitary eigenvalues did not separate".into()))
}

/// Eigenphases of U₁†U₂ in [0, 2π).
pub fn relative_eigenphases(u1: &UnitaryChannel, u2: &UnitaryChannel) -> Result<Vec<f64>> {
    if u1.dim() != u2.dim() {
        return Err(Error::DimensionMismatch {
            expected: u1.dim(),
            found: u2.dim(),
        });
    }
    let w = u1.matrix().adjoint().matmul(u2.matrix());
    Ok(unitary_eigenvalues(&w)?.iter().map(|z| z.arg().rem_euclid(TAU)).collect())
}

fn cross(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

fn segment_distance(a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let t = if len2 > 0.0 {
        (-(a.0 * dx + a.1 * dy) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    (a.0 + t * dx).hypot(a.1 + t * dy)
}

/// Counter-clockwise convex hull (monotone chain), collinear points dropped.
fn convex_hull(points: &[Complex]) -> Vec<(f64, f64)> {
    let mut pts: Vec<(f64, f64)> = points.iter().map(|z| (z.re, z.im)).collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    pts.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-15 && (a.1 - b.1).abs() < 1e-15);
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<(f64, f64)> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &(f64, f64)>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Distance from the origin to the convex hull of points in the plane.
pub fn origin_distance_to_hull(points: &[Complex]) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::EmptyEnsemble);
    }
    let hull = convex_hull(points);
    match hull.len() {
        1 => Ok(hull[0].0.hypot(hull[0].1)),
        2 => Ok(segment_distance(hull[0], hull[1])),
        n => {
            let edges = (0..n).map(|i| (hull[i], hull[(i + 1) % n]));
            let inside = edges.clone().all(|(a, b)| cross(a, b, (0.0, 0.0)) >= -1e-15);
            if inside {
                Ok(0.0)
            } else {
                Ok(edges.map(|(a, b)| segment_distance(a, b)).fold(f64::INFINITY, f64::min))
            }
        }
    }
}

/// min over probes of |⟨φ|(U₁†U₂ ⊗ I)|φ⟩|: the distance from the origin to
/// the polygon spanned by the eigenvalues of U₁†U₂.
pub fn two_unitary_min_overlap(u1: &UnitaryChannel, u2: &UnitaryChannel) -> Result<f64> {
    let phases = relative_eigenphases(u1, u2)?;
    let points: Vec<Complex> = phases.iter().map(|&t| Complex::from_polar(1.0, t)).collect();
    Ok(origin_distance_to_hull(&points)?.clamp(0.0, 1.0))
}

/// Smallest arc of the circle containing all phases: (start, width), the arc
/// running counter-clockwise from `start`.
pub fn eigenphase_arc(phases: &[f64]) -> (f64, f64) {
    let mut sorted: Vec<f64> = phases.iter().map(|t| t.rem_euclid(TAU)).collect();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    if n == 0 {
        return (0.0, 0.0);
    }
    // the arc is the complement of the largest gap between neighbours
    let mut best_gap = -1.0;
    let mut start = sorted[0];
    for i in 0..n {
        let next = if i + 1 < n { sorted[i + 1] } else { sorted[0] + TAU };
        let gap = next - sorted[i];
        if gap > best_gap {
            best_gap = gap;
            start = next.rem_euclid(TAU);
        }
    }
    (start, (TAU - best_gap).max(0.0))
}

fn arc_points(start: f64, width: f64, copies: u64) -> Vec<Complex> {
    (0..=copies)
        .map(|k| Complex::from_polar(1.0, copies as f64 * start + k as f64 * width))
        .collect()
}

/// Smallest N for which N copies of the pair are perfectly distinguishable,
/// N = ⌈π/Θ⌉. Qubit unitaries only.
pub fn min_copies_perfect(u1: &UnitaryChannel, u2: &UnitaryChannel) -> Result<u64> {
    if u1.dim() != 2 || u2.dim() != 2 {
        return Err(Error::InvalidShape(format!(
            "copy counts need qubit unitaries, got dimensions {} and {}",
            u1.dim(),
            u2.dim()
        )));
    }
    let phases = relative_eigenphases(u1, u2)?;
    let (start, width) = eigenphase_arc(&phases);
    if width <= 1e-9 {
        return Err(Error::Never);
    }
    let n = ((PI / width) - 1e-9).ceil().max(1.0) as u64;

    if n <= CROSS_CHECK_LIMIT {
        // the N-fold eigenvalues are e^{i(N·start + kΘ)}, k = 0..N
        let at_n = origin_distance_to_hull(&arc_points(start, width, n))?;
        if at_n > 1e-9 {
            return Err(Error::Inconsistent(format!("{n} copies leave the origin at distance {at_n:e}")));
        }
        if n > 1 {
            let before = origin_distance_to_hull(&arc_points(start, width, n - 1))?;
            if before <= 0.0 {
                return Err(Error::Inconsistent(format!("{} copies already reach the origin", n - 1)));
            }
        }
    }
    Ok(n)
}

/// Σ of the m − 1 largest pairwise copy counts, an upper bound on the copies
/// needed to identify one of m unitaries perfectly.
pub fn copies_upper_bound(us: &[UnitaryChannel]) -> Result<u64> {
    if us.len() < 2 {
        return Err(Error::InvalidConfig("need at least two unitaries".into()));
    }
    let mut pairwise = Vec::new();
    for i in 0..us.len() {
        for j in i + 1..us.len() {
            pairwise.push(min_copies_perfect(&us[i], &us[j])?);
        }
    }
    pairwise.sort_unstable_by(|a, b| b.cmp(a));
    Ok(pairwise.iter().take(us.len() - 1).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::random_unitary;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

    fn phase(theta: f64) -> UnitaryChannel {
        UnitaryChannel::new(ComplexMatrix::diag(&[Complex::new(1.0, 0.0), Complex::from_polar(1.0, theta)])).unwrap()
    }

    #[test]
    fn overlap_examples() {
        let id = phase(0.0);
        assert!((two_unitary_min_overlap(&id, &id).unwrap() - 1.0).abs() < 1e-12);
        assert!(two_unitary_min_overlap(&id, &phase(PI)).unwrap() < 1e-12);
        let v = two_unitary_min_overlap(&id, &phase(FRAC_PI_2)).unwrap();
        assert!((v - FRAC_1_SQRT_2).abs() < 1e-9);
    }

    #[test]
    fn overlap_matches_arc_formula_on_random_unitaries() {
        for seed in 0..200 {
            let d = 2 + (seed as usize % 4);
            let a = UnitaryChannel::new(random_unitary(d, seed)).unwrap();
            let b = UnitaryChannel::new(random_unitary(d, seed + 1000)).unwrap();
            let hull = two_unitary_min_overlap(&a, &b).unwrap();
            let (_, width) = eigenphase_arc(&relative_eigenphases(&a, &b).unwrap());
            let arc = if width >= PI { 0.0 } else { (width / 2.0).cos() };
            assert!((hull - arc).abs() < 1e-9, "seed {seed}: {hull} vs {arc}");
        }
    }

    #[test]
    fn eigenvalues_of_random_unitaries_reconstruct_trace_and_determinant() {
        for seed in 0..100 {
            let d = 1 + (seed as usize % 6);
            let u = random_unitary(d, seed);
            let values = unitary_eigenvalues(&u).unwrap();
            let tr: Complex = values.iter().sum();
            let det: Complex = values.iter().product();
            assert!((tr - u.trace()).norm() < 1e-9, "seed {seed}");
            assert!((det - u.determinant().unwrap()).norm() < 1e-9, "seed {seed}");
        }
    }

    #[test]
    fn degenerate_phases_are_handled() {
        let u = ComplexMatrix::diag(&[
            Complex::from_polar(1.0, 0.3),
            Complex::from_polar(1.0, 0.3),
            Complex::from_polar(1.0, -1.0),
        ]);
        let w = random_unitary(3, 5);
        let m = w.conjugate_by(&u);
        let mut phases: Vec<f64> = unitary_eigenvalues(&m).unwrap().iter().map(|z| z.arg()).collect();
        phases.sort_by(f64::total_cmp);
        assert!((phases[0] + 1.0).abs() < 1e-9 && (phases[1] - 0.3).abs() < 1e-9 && (phases[2] - 0.3).abs() < 1e-9);
    }

    #[test]
    fn arc_wraps_around_zero() {
        let (start, width) = eigenphase_arc(&[6.0, 0.2]);
        assert!((start - 6.0).abs() < 1e-12);
        assert!((width - (0.2 + TAU - 6.0)).abs() < 1e-12);
    }

    #[test]
    fn hull_inside_and_outside() {
        let tri = [Complex::new(1.0, 0.0), Complex::new(-0.5, 0.8), Complex::new(-0.5, -0.8)];
        assert_eq!(origin_distance_to_hull(&tri).unwrap(), 0.0);
        let far = [Complex::new(2.0, 1.0), Complex::new(2.0, -1.0), Complex::new(3.0, 0.0)];
        assert!((origin_distance_to_hull(&far).unwrap() - 2.0).abs() < 1e-15);
        assert!((origin_distance_to_hull(&[Complex::new(0.0, 3.0)]).unwrap() - 3.0).abs() < 1e-15);
    }

    #[test]
    fn copies_examples() {
        let id = phase(0.0);
        assert_eq!(min_copies_perfect(&id, &phase(PI)).unwrap(), 1);
        assert_eq!(min_copies_perfect(&id, &phase(FRAC_PI_2)).unwrap(), 2);
        assert_eq!(min_copies_perfect(&id, &phase(FRAC_PI_4)).unwrap(), 4);
        assert_eq!(min_copies_perfect(&id, &phase(0.3)).unwrap(), 11);
        assert!(matches!(min_copies_perfect(&id, &id), Err(Error::Never)));
        // global phase only
        let g = UnitaryChannel::new(ComplexMatrix::identity(2).scale(Complex::from_polar(1.0, 0.7))).unwrap();
        assert!(matches!(min_copies_perfect(&id, &g), Err(Error::Never)));
    }

    #[test]
    fn copies_bound_examples() {
        let id = phase(0.0);
        assert_eq!(copies_upper_bound(&[id.clone(), phase(FRAC_PI_4)]).unwrap(), 4);
        let three = [id.clone(), phase(FRAC_PI_2), phase(FRAC_PI_4)];
        assert_eq!(copies_upper_bound(&three).unwrap(), 8);
        let three = [id.clone(), phase(PI), phase(FRAC_PI_2)];
        assert_eq!(copies_upper_bound(&three).unwrap(), 4);
        assert!(copies_upper_bound(std::slice::from_ref(&id)).is_err());
        assert!(matches!(copies_upper_bound(&[id.clone(), id]), Err(Error::Never)));
    }
}
