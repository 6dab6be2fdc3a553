use std::f64::consts::TAU;

use nalgebra::{DMatrix, Schur};

use crate::c64;
use crate::cmv::{unitarity_defect, UnitaryMatrix};
use crate::error::{Error, Result};

const MAX_SCHUR_ITERATIONS: usize = 10_000;

/// Eigenvalues on the unit circle, sorted by argument in `[0, 2π)`, with multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitarySpectrum {
    pub eigenvalues: Vec<c64>,
    pub multiplicities: Vec<usize>,
}

impl UnitarySpectrum {
    /// Each eigenvalue repeated according to its multiplicity.
    pub fn expanded(&self) -> Vec<c64> {
        self.eigenvalues
            .iter()
            .zip(&self.multiplicities)
            .flat_map(|(&z, &m)| std::iter::repeat(z).take(m))
            .collect()
    }

    pub fn total(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    pub fn product(&self) -> c64 {
        self.expanded().into_iter().product()
    }
}

/// Principal argument mapped into `[0, 2π)`.
pub fn circle_arg(z: c64) -> f64 {
    let a = z.arg().rem_euclid(TAU);
    if a >= TAU {
        0.0
    } else {
        a
    }
}

pub(crate) fn project(z: c64) -> c64 {
    z / z.norm()
}

pub(crate) fn sort_by_arg(values: &mut [c64]) {
    values.sort_by(|a, b| circle_arg(*a).total_cmp(&circle_arg(*b)));
}

/// Complex Schur factors `(Q, T)` with `U = Q T Q^H`.
fn schur(u: &UnitaryMatrix) -> Result<(DMatrix<c64>, DMatrix<c64>)> {
    let defect = unitarity_defect(u);
    if !(defect < 1e-8) {
        return Err(Error::NotUnitary(defect));
    }
    let s = Schur::try_new(u.entries().clone(), f64::EPSILON, MAX_SCHUR_ITERATIONS)
        .ok_or(Error::NoConvergence)?;
    Ok(s.unpack())
}

/// Eigenvalues of a unitary matrix, projected radially to the circle and
/// merged into clusters closer than `cluster_tol`.
pub fn unitary_eigenvalues(u: &UnitaryMatrix, cluster_tol: f64) -> Result<UnitarySpectrum> {
    let (_, t) = schur(u)?;
    let mut values: Vec<c64> = (0..u.dim()).map(|i| project(t[(i, i)])).collect();
    sort_by_arg(&mut values);
    Ok(cluster(&values, cluster_tol))
}

/// Eigenvalues (projected, unsorted) and the unitary whose columns are the
/// matching eigenvectors. For a normal matrix the Schur form is diagonal, so
/// the Schur vectors are eigenvectors.
pub fn unitary_eigendecomposition(u: &UnitaryMatrix) -> Result<(Vec<c64>, DMatrix<c64>)> {
    let (q, t) = schur(u)?;
    let values = (0..u.dim()).map(|i| project(t[(i, i)])).collect();
    Ok((values, q))
}

/// Groups sorted circle points into clusters; the first and last groups are
/// joined when they meet across the angle 0.
fn cluster(sorted: &[c64], tol: f64) -> UnitarySpectrum {
    let mut groups: Vec<Vec<c64>> = Vec::new();
    for &z in sorted {
        match groups.last_mut() {
            Some(g) if (g[g.len() - 1] - z).norm() < tol => g.push(z),
            _ => groups.push(vec![z]),
        }
    }
    if groups.len() > 1 {
        let first = groups[0][0];
        let last_group = &groups[groups.len() - 1];
        if (last_group[last_group.len() - 1] - first).norm() < tol {
            let tail = groups.pop().unwrap();
            groups[0].extend(tail);
        }
    }
    let mut pairs: Vec<(c64, usize)> = groups
        .into_iter()
        .map(|g| {
            let sum: c64 = g.iter().sum();
            (project(sum), g.len())
        })
        .collect();
    pairs.sort_by(|a, b| circle_arg(a.0).total_cmp(&circle_arg(b.0)));
    UnitarySpectrum {
        eigenvalues: pairs.iter().map(|p| p.0).collect(),
        multiplicities: pairs.iter().map(|p| p.1).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmv::build_finite_cmv;
    use crate::opuc::FinalizedWord;

    #[test]
    fn identity_has_one_eigenvalue_of_multiplicity_n() {
        let s = unitary_eigenvalues(&UnitaryMatrix::identity(4), 1e-7).unwrap();
        assert_eq!(s.eigenvalues, vec![c64::new(1.0, 0.0)]);
        assert_eq!(s.multiplicities, vec![4]);
    }

    #[test]
    fn two_by_two_cmv() {
        let fin = FinalizedWord::new(vec![c64::new(0.5, 0.0), c64::new(1.0, 0.0)], 1e-9).unwrap();
        let s = unitary_eigenvalues(&build_finite_cmv(&fin).unwrap(), 1e-7).unwrap();
        assert_eq!(s.multiplicities, vec![1, 1]);
        assert!((s.eigenvalues[0] - c64::new(1.0, 0.0)).norm() < 1e-14);
        assert!((s.eigenvalues[1] - c64::new(-1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn cluster_wraps_across_zero_angle() {
        let pts = vec![
            c64::from_polar(1.0, 1e-9),
            c64::from_polar(1.0, 2.0),
            c64::from_polar(1.0, TAU - 1e-9),
        ];
        let s = cluster(&pts, 1e-7);
        assert_eq!(s.total(), 3);
        assert_eq!(s.eigenvalues.len(), 2);
        assert_eq!(s.multiplicities, vec![2, 1]);
    }

    #[test]
    fn rejects_non_unitary() {
        let m = DMatrix::from_element(2, 2, c64::new(1.0, 0.0));
        assert!(matches!(
            unitary_eigenvalues(&UnitaryMatrix::from_dense(m), 1e-7),
            Err(Error::NotUnitary(_))
        ));
    }
}
