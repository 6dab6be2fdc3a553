//! Dirichlet points and their spectral weights.
//!
//! The Dirichlet points of a periodic word are the zeros of `Φ_p - Φ_p^*`.
//! They coincide with the eigenvalues of the finite CMV matrix built from the
//! word with its last coefficient replaced by `(1 + α_{p-1}) / (1 + conj α_{p-1})`,
//! and the spectral measure of that matrix at `e_1` puts mass
//! `[d/dr|φ_p(rz)|² - p|φ_p(z)|²]^{-1}` on each point.

use std::f64::consts::TAU;

use crate::c64;
use crate::cmv::build_finite_cmv;
use crate::error::{Error, Result};
use crate::opuc::{orthonormal_pth, radial_modulus_derivative, szego_iterate, ComplexPolynomial, FinalizedWord, VerblunskyWord};
use crate::tolerances::Tolerances;

use super::eigen::{circle_arg, sort_by_arg, unitary_eigendecomposition, unitary_eigenvalues};

/// Below this `|1 + α_{p-1}|` the twisted coefficient is flagged as ill-conditioned.
pub const ILL_CONDITIONED_THRESHOLD: f64 = 1e-6;

/// Dirichlet points with weights, sorted by argument.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletData {
    pub points: Vec<c64>,
    pub weights: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Warning {
    /// `|1 + α_{p-1}|` is below [`ILL_CONDITIONED_THRESHOLD`].
    IllConditioned { modulus: f64 },
}

impl std::fmt::Display for Warning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Warning::IllConditioned { modulus } => {
                write!(f, "IllConditioned: |1 + alpha_(p-1)| = {modulus:e}")
            }
        }
    }
}

/// `(1 + a) / (1 + conj a)`, renormalized to modulus one.
pub fn twisted_coefficient(a: c64) -> c64 {
    let t = (1.0 + a) / (1.0 + a.conj());
    t / t.norm()
}

/// The finite word with `α_{p-1}` replaced by its twisted unimodular value.
pub fn tilde_word(word: &VerblunskyWord) -> (FinalizedWord, Option<Warning>) {
    let a = word.last();
    let mut alpha = word.alpha().to_vec();
    let n = alpha.len();
    alpha[n - 1] = twisted_coefficient(a);
    let fin = FinalizedWord::new(alpha, 1e-12).expect("twisted coefficient is unimodular");
    let modulus = (1.0 + a).norm();
    let warning = (modulus < ILL_CONDITIONED_THRESHOLD).then_some(Warning::IllConditioned { modulus });
    (fin, warning)
}

/// Eigenvalues of the twisted finite CMV matrix, with multiplicity, sorted by argument.
pub fn dirichlet_points(word: &VerblunskyWord, tol: &Tolerances) -> Result<Vec<c64>> {
    let (fin, _) = tilde_word(word);
    let cmv = build_finite_cmv(&fin)?;
    Ok(unitary_eigenvalues(&cmv, tol.cluster)?.expanded())
}

/// `Φ_p - Φ_p^*` from the periodic recurrence.
pub fn dirichlet_polynomial(word: &VerblunskyWord) -> ComplexPolynomial {
    let (phi, star) = szego_iterate(word, word.period()).expect("k = p is in range");
    phi.sub(&star)
}

/// Zeros of `Φ_p - Φ_p^*` found on the circle by sign changes of a real function.
///
/// With `u = (1 + α_{p-1}) / |1 + α_{p-1}|`, the function
/// `θ ↦ i u e^{-ipθ/2} (Φ_p - Φ_p^*)(e^{iθ}) / (1 + α_{p-1})` is real, so its
/// real part changes sign exactly at the zeros. The grid has `16p` points,
/// refined once by a factor of 4 if too few sign changes are seen.
pub fn dirichlet_points_oracle(word: &VerblunskyWord) -> Result<Vec<c64>> {
    let p = word.period();
    let poly = dirichlet_polynomial(word);
    let one_plus = 1.0 + word.last();
    let u = one_plus / one_plus.norm();
    let half = p as f64 / 2.0;
    let g = |theta: f64| -> f64 {
        let z = c64::from_polar(1.0, theta);
        let phase = c64::from_polar(1.0, -half * theta);
        (c64::new(0.0, 1.0) * u * phase * poly.eval(z) / one_plus).re
    };
    let mut found = 0;
    for grid in [16 * p, 64 * p] {
        let roots = bracket_roots(&g, grid);
        found = roots.len();
        if found == p {
            let mut pts: Vec<c64> = roots.into_iter().map(|t| c64::from_polar(1.0, t)).collect();
            sort_by_arg(&mut pts);
            return Ok(pts);
        }
    }
    Err(Error::RootCountMismatch { found, expected: p })
}

fn bracket_roots(g: &impl Fn(f64) -> f64, grid: usize) -> Vec<f64> {
    let step = TAU / grid as f64;
    let values: Vec<f64> = (0..=grid).map(|k| g(k as f64 * step)).collect();
    let mut roots = Vec::new();
    for k in 0..grid {
        let (a, b) = (k as f64 * step, (k + 1) as f64 * step);
        let (fa, fb) = (values[k], values[k + 1]);
        if fa == 0.0 {
            roots.push(a);
        } else if fa * fb < 0.0 {
            roots.push(bisect(g, a, b, fa));
        }
    }
    roots
}

fn bisect(g: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = g(m);
        if fm == 0.0 {
            return m;
        }
        if (fa < 0.0) == (fm < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Weights `[d/dr|_{r=1}|φ_p(rz_j)|² - p|φ_p(z_j)|²]^{-1}` at the given points.
pub fn dirichlet_weights(word: &VerblunskyWord, points: &[c64], tol: &Tolerances) -> Result<Vec<f64>> {
    let phi = orthonormal_pth(word);
    let p = word.period() as f64;
    points
        .iter()
        .enumerate()
        .map(|(index, &z)| {
            let denom = radial_modulus_derivative(&phi, z, tol.circle)? - p * phi.eval(z).norm_sqr();
            if !(denom > 0.0) {
                return Err(Error::NonpositiveDenominator { index, value: denom });
            }
            Ok(1.0 / denom)
        })
        .collect()
}

/// Dirichlet data read off the eigendecomposition of the twisted CMV matrix:
/// the weight at each eigenvalue is `|first eigenvector component|²`.
pub fn weights_oracle(word: &VerblunskyWord) -> Result<DirichletData> {
    let (fin, _) = tilde_word(word);
    let cmv = build_finite_cmv(&fin)?;
    let (values, vectors) = unitary_eigendecomposition(&cmv)?;
    let mut pairs: Vec<(c64, f64)> = values
        .iter()
        .enumerate()
        .map(|(i, &z)| (z, vectors[(0, i)].norm_sqr()))
        .collect();
    pairs.sort_by(|a, b| circle_arg(a.0).total_cmp(&circle_arg(b.0)));
    Ok(DirichletData {
        points: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    })
}
