//! Characteristic polynomial and its roots, computed without an eigensolver.

use nalgebra::DMatrix;

use crate::c64;
use crate::cmv::UnitaryMatrix;
use crate::opuc::{eval_with_derivative, ComplexPolynomial};

use super::eigen::{project, sort_by_arg};

const ABERTH_MAX_ITERATIONS: usize = 1000;

/// `det(zI - U)` by the Faddeev–LeVerrier trace recursion.
///
/// Adequate for the small (`n <= 64`) unitary matrices used here, where all
/// coefficients are bounded by binomial coefficients.
pub fn char_poly_oracle(u: &UnitaryMatrix) -> ComplexPolynomial {
    let n = u.dim();
    let a = u.entries();
    let mut coeffs = vec![c64::new(0.0, 0.0); n + 1];
    coeffs[n] = c64::new(1.0, 0.0);
    let mut m = DMatrix::<c64>::zeros(n, n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = a * &m;
        for i in 0..n {
            next[(i, i)] += coeffs[n - k + 1];
        }
        let am = a * &next;
        coeffs[n - k] = -am.trace() / k as f64;
        m = next;
    }
    ComplexPolynomial::new(coeffs)
}

/// All roots of a polynomial by Aberth–Ehrlich simultaneous iteration.
pub fn aberth_roots(poly: &ComplexPolynomial) -> Vec<c64> {
    let n = poly.effective_degree();
    if n == 0 {
        return Vec::new();
    }
    let lead = poly.coeff(n);
    let monic = ComplexPolynomial::new((0..=n).map(|l| poly.coeff(l) / lead).collect());
    // Start on a circle slightly off the unit circle, rotated off any symmetry axis.
    let mut z: Vec<c64> = (0..n)
        .map(|k| c64::from_polar(1.1, (k as f64 + 0.37) * std::f64::consts::TAU / n as f64))
        .collect();
    for _ in 0..ABERTH_MAX_ITERATIONS {
        let mut biggest = 0.0f64;
        for k in 0..n {
            let (v, d) = eval_with_derivative(&monic, z[k]);
            if v == c64::new(0.0, 0.0) {
                continue;
            }
            let ratio = v / d;
            let repulsion: c64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| 1.0 / (z[k] - z[j]))
                .sum();
            let step = ratio / (1.0 - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
                biggest = biggest.max(step.norm() / z[k].norm().max(1.0));
            }
        }
        if biggest < 1e-15 {
            break;
        }
    }
    z
}

/// Roots of the characteristic polynomial projected onto the circle and
/// sorted by argument: the eigensolver-independent eigenvalue oracle.
pub fn oracle_eigenvalues(u: &UnitaryMatrix) -> Vec<c64> {
    let mut roots: Vec<c64> = aberth_roots(&char_poly_oracle(u)).into_iter().map(project).collect();
    sort_by_arg(&mut roots);
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmv::build_finite_cmv;
    use crate::opuc::FinalizedWord;

    fn c(re: f64, im: f64) -> c64 {
        c64::new(re, im)
    }

    #[test]
    fn char_poly_of_small_cmv() {
        let fin = FinalizedWord::new(vec![c(0.5, 0.0), c(1.0, 0.0)], 1e-9).unwrap();
        let p = char_poly_oracle(&build_finite_cmv(&fin).unwrap());
        let expected = ComplexPolynomial::new(vec![c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(p.max_coeff_distance(&expected) < 1e-15);

        let fin = FinalizedWord::new(vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)], 1e-9).unwrap();
        let p = char_poly_oracle(&build_finite_cmv(&fin).unwrap());
        let mut expected = vec![c(0.0, 0.0); 5];
        expected[0] = c(-1.0, 0.0);
        expected[4] = c(1.0, 0.0);
        assert!(p.max_coeff_distance(&ComplexPolynomial::new(expected)) < 1e-15);
    }

    #[test]
    fn aberth_finds_roots_of_unity() {
        let mut coeffs = vec![c(0.0, 0.0); 7];
        coeffs[0] = c(-1.0, 0.0);
        coeffs[6] = c(1.0, 0.0);
        let mut roots = aberth_roots(&ComplexPolynomial::new(coeffs));
        sort_by_arg(&mut roots);
        for (k, r) in roots.iter().enumerate() {
            let expected = c64::from_polar(1.0, k as f64 * std::f64::consts::TAU / 6.0);
            assert!((r - expected).norm() < 1e-13, "{r} vs {expected}");
        }
    }

    #[test]
    fn aberth_handles_double_roots_to_half_precision() {
        // (z^2 - 1)^2
        let p = ComplexPolynomial::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(-2.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let roots = aberth_roots(&p);
        for r in roots {
            assert!((r - c(1.0, 0.0)).norm() < 1e-6 || (r + c(1.0, 0.0)).norm() < 1e-6);
        }
    }
}
