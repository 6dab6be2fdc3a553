//! Coefficient words, the Szegő recurrence and polynomial helpers.

use crate::c64;
use crate::error::{Error, Result};

/// A `p`-periodic word of Verblunsky coefficients, `p` even, all inside the unit disk.
#[derive(Debug, Clone, PartialEq)]
pub struct VerblunskyWord {
    alpha: Vec<c64>,
}

impl VerblunskyWord {
    pub fn new(alpha: Vec<c64>) -> Result<Self> {
        if alpha.is_empty() {
            return Err(Error::EmptyWord);
        }
        if alpha.len() % 2 != 0 {
            return Err(Error::OddPeriod(alpha.len()));
        }
        for (index, a) in alpha.iter().enumerate() {
            let modulus = a.norm();
            if !(modulus < 1.0) {
                return Err(Error::CoefficientOutsideDisk { index, modulus });
            }
        }
        Ok(VerblunskyWord { alpha })
    }

    /// Builds a word from `(re, im)` pairs.
    pub fn from_pairs(raw: &[(f64, f64)]) -> Result<Self> {
        Self::new(raw.iter().map(|&(re, im)| c64::new(re, im)).collect())
    }

    /// The all-zero word of period `p`.
    pub fn free(p: usize) -> Result<Self> {
        Self::new(vec![c64::new(0.0, 0.0); p])
    }

    pub fn period(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[c64] {
        &self.alpha
    }

    /// `α_{p-1}`.
    pub fn last(&self) -> c64 {
        self.alpha[self.alpha.len() - 1]
    }
}

/// A finite coefficient word whose final entry lies on the unit circle.
#[derive(Debug, Clone, PartialEq)]
pub struct FinalizedWord {
    alpha: Vec<c64>,
}

impl FinalizedWord {
    /// The final coefficient must be within `circle_tol` of the unit circle;
    /// it is renormalized to modulus one.
    pub fn new(mut alpha: Vec<c64>, circle_tol: f64) -> Result<Self> {
        let n = alpha.len();
        if n == 0 {
            return Err(Error::EmptyWord);
        }
        if n % 2 != 0 {
            return Err(Error::OddDimension(n));
        }
        for (index, a) in alpha[..n - 1].iter().enumerate() {
            let modulus = a.norm();
            if !(modulus < 1.0) {
                return Err(Error::CoefficientOutsideDisk { index, modulus });
            }
        }
        let last = alpha[n - 1];
        let modulus = last.norm();
        if !((modulus - 1.0).abs() <= circle_tol) {
            return Err(Error::FinalNotUnimodular(modulus));
        }
        alpha[n - 1] = last / modulus;
        Ok(FinalizedWord { alpha })
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    pub fn alpha(&self) -> &[c64] {
        &self.alpha
    }

    pub fn last(&self) -> c64 {
        self.alpha[self.alpha.len() - 1]
    }
}

/// Anything that carries a sequence of recurrence coefficients.
pub trait Coefficients {
    fn coefficients(&self) -> &[c64];
}

impl Coefficients for VerblunskyWord {
    fn coefficients(&self) -> &[c64] {
        &self.alpha
    }
}

impl Coefficients for FinalizedWord {
    fn coefficients(&self) -> &[c64] {
        &self.alpha
    }
}

/// `ρ_j = sqrt(1 - |α_j|²)` for each coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct RhoSequence(pub Vec<f64>);

impl RhoSequence {
    pub fn product(&self) -> f64 {
        self.0.iter().product()
    }
}

pub fn rho(a: c64) -> f64 {
    // 1 - |a|^2 factored as (1-|a|)(1+|a|) keeps precision near the circle.
    let m = a.norm();
    ((1.0 - m) * (1.0 + m)).max(0.0).sqrt()
}

pub fn rho_of<W: Coefficients + ?Sized>(word: &W) -> RhoSequence {
    RhoSequence(word.coefficients().iter().map(|&a| rho(a)).collect())
}

/// Dense complex polynomial, coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPolynomial {
    coeffs: Vec<c64>,
}

impl ComplexPolynomial {
    pub fn new(coeffs: Vec<c64>) -> Self {
        if coeffs.is_empty() {
            return ComplexPolynomial {
                coeffs: vec![c64::new(0.0, 0.0)],
            };
        }
        ComplexPolynomial { coeffs }
    }

    pub fn one() -> Self {
        Self::new(vec![c64::new(1.0, 0.0)])
    }

    pub fn monomial(k: usize) -> Self {
        let mut c = vec![c64::new(0.0, 0.0); k + 1];
        c[k] = c64::new(1.0, 0.0);
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[c64] {
        &self.coeffs
    }

    /// Nominal degree: index of the last stored coefficient.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Index of the highest nonzero coefficient (0 for the zero polynomial).
    pub fn effective_degree(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| *c != c64::new(0.0, 0.0))
            .unwrap_or(0)
    }

    pub fn coeff(&self, l: usize) -> c64 {
        self.coeffs.get(l).copied().unwrap_or_default()
    }

    pub fn leading(&self) -> c64 {
        self.coeffs[self.coeffs.len() - 1]
    }

    pub fn scale(&self, s: c64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|l| self.coeff(l) - other.coeff(l)).collect())
    }

    pub fn eval(&self, z: c64) -> c64 {
        self.coeffs
            .iter()
            .rev()
            .fold(c64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Largest coefficientwise modulus of `self - other`.
    pub fn max_coeff_distance(&self, other: &Self) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|l| (self.coeff(l) - other.coeff(l)).norm())
            .fold(0.0, f64::max)
    }
}

/// Runs the monic Szegő recurrence `k` steps, returning `(Φ_k, Φ_k^*)`.
///
/// `Φ^*` is carried along by its own update
/// `Φ^*_{j+1} = Φ^*_j - α_j z Φ_j` instead of reversing at each step.
pub fn szego_iterate<W: Coefficients + ?Sized>(
    word: &W,
    k: usize,
) -> Result<(ComplexPolynomial, ComplexPolynomial)> {
    let alpha = word.coefficients();
    if k > alpha.len() {
        return Err(Error::IndexOutOfRange { k, len: alpha.len() });
    }
    let zero = c64::new(0.0, 0.0);
    let mut phi = vec![c64::new(1.0, 0.0)];
    let mut star = vec![c64::new(1.0, 0.0)];
    for &a in &alpha[..k] {
        let d = phi.len();
        let mut next = vec![zero; d + 1];
        let mut next_star = vec![zero; d + 1];
        for l in 0..d {
            // z·Φ_j shifts up one degree.
            next[l + 1] += phi[l];
            next[l] -= a.conj() * star[l];
            next_star[l] += star[l];
            next_star[l + 1] -= a * phi[l];
        }
        phi = next;
        star = next_star;
    }
    Ok((ComplexPolynomial::new(phi), ComplexPolynomial::new(star)))
}

/// `P^*(z) = z^k conj(P(1/conj z))`: coefficient `l` becomes `conj(c_{k-l})`.
pub fn reverse_poly(poly: &ComplexPolynomial, k: usize) -> Result<ComplexPolynomial> {
    let degree = poly.effective_degree();
    if degree > k {
        return Err(Error::DegreeExceedsK { degree, k });
    }
    Ok(ComplexPolynomial::new(
        (0..=k).map(|l| poly.coeff(k - l).conj()).collect(),
    ))
}

/// Orthonormal `φ_p = Φ_p / (ρ_0 ⋯ ρ_{p-1})`.
pub fn orthonormal_pth(word: &VerblunskyWord) -> ComplexPolynomial {
    let (phi, _) = szego_iterate(word, word.period()).expect("k = p is in range");
    let norm = rho_of(word).product();
    phi.scale(c64::new(1.0 / norm, 0.0))
}

/// Simultaneous Horner evaluation of `P(z)` and `P'(z)`.
pub fn eval_with_derivative(poly: &ComplexPolynomial, z: c64) -> (c64, c64) {
    let zero = c64::new(0.0, 0.0);
    let mut value = zero;
    let mut deriv = zero;
    for &c in poly.coeffs().iter().rev() {
        deriv = deriv * z + value;
        value = value * z + c;
    }
    (value, deriv)
}

/// `d/dr |P(rz)|²` at `r = 1`, which for `|z| = 1` equals `2 Re(z P'(z) conj(P(z)))`.
pub fn radial_modulus_derivative(poly: &ComplexPolynomial, z: c64, circle_tol: f64) -> Result<f64> {
    let m = z.norm();
    if (m - 1.0).abs() > circle_tol {
        return Err(Error::NotOnCircle(m));
    }
    let (v, d) = eval_with_derivative(poly, z);
    Ok(2.0 * (z * d * v.conj()).re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> c64 {
        c64::new(re, im)
    }

    fn assert_poly(p: &ComplexPolynomial, expected: &[c64], tol: f64) {
        assert!(
            p.max_coeff_distance(&ComplexPolynomial::new(expected.to_vec())) <= tol,
            "{:?} vs {:?}",
            p.coeffs(),
            expected
        );
    }

    #[test]
    fn validate_word_cases() {
        let w = VerblunskyWord::from_pairs(&[(0.0, 0.0), (0.0, 0.0)]).unwrap();
        assert_eq!(w.period(), 2);
        let w = VerblunskyWord::from_pairs(&[(0.5, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.3)]).unwrap();
        assert_eq!(w.period(), 4);
        assert_eq!(
            VerblunskyWord::from_pairs(&[(1.0, 0.0), (0.0, 0.0)]),
            Err(Error::CoefficientOutsideDisk { index: 0, modulus: 1.0 })
        );
        assert_eq!(VerblunskyWord::from_pairs(&[]), Err(Error::EmptyWord));
        assert_eq!(
            VerblunskyWord::from_pairs(&[(0.1, 0.0); 3]),
            Err(Error::OddPeriod(3))
        );
        assert!(matches!(
            VerblunskyWord::new(vec![c(f64::NAN, 0.0), c(0.0, 0.0)]),
            Err(Error::CoefficientOutsideDisk { index: 0, .. })
        ));
    }

    #[test]
    fn finalized_word_renormalizes_last_entry() {
        let f = FinalizedWord::new(vec![c(0.5, 0.0), c(1.0 + 1e-12, 0.0)], 1e-9).unwrap();
        assert_eq!(f.last().norm(), 1.0);
        assert!(matches!(
            FinalizedWord::new(vec![c(0.5, 0.0), c(0.9, 0.0)], 1e-9),
            Err(Error::FinalNotUnimodular(_))
        ));
        assert!(matches!(
            FinalizedWord::new(vec![c(0.5, 0.0), c(0.0, 0.0), c(1.0, 0.0)], 1e-9),
            Err(Error::OddDimension(3))
        ));
    }

    #[test]
    fn rho_values() {
        let w = VerblunskyWord::free(2).unwrap();
        assert_eq!(rho_of(&w).0, vec![1.0, 1.0]);
        let w = VerblunskyWord::from_pairs(&[(0.5, 0.0), (0.0, 0.0)]).unwrap();
        assert_abs_diff_eq!(rho_of(&w).0[0], 0.8660254037844386, epsilon = 1e-16);
        let f = FinalizedWord::new(vec![c(0.5, 0.0), c(0.6, 0.8)], 1e-9).unwrap();
        assert_eq!(rho_of(&f).0[1], 0.0);
    }

    #[test]
    fn szego_examples() {
        let w = VerblunskyWord::free(4).unwrap();
        let (phi, star) = szego_iterate(&w, 4).unwrap();
        assert_eq!(phi, ComplexPolynomial::monomial(4));
        assert_poly(&star, &[c(1.0, 0.0)], 0.0);

        let w = VerblunskyWord::from_pairs(&[(0.5, 0.0), (0.0, 0.0)]).unwrap();
        let (phi, star) = szego_iterate(&w, 1).unwrap();
        assert_poly(&phi, &[c(-0.5, 0.0), c(1.0, 0.0)], 1e-16);
        assert_poly(&star, &[c(1.0, 0.0), c(-0.5, 0.0)], 1e-16);
        let (phi, star) = szego_iterate(&w, 2).unwrap();
        assert_poly(&phi, &[c(0.0, 0.0), c(-0.5, 0.0), c(1.0, 0.0)], 1e-16);
        assert_poly(&star, &[c(1.0, 0.0), c(-0.5, 0.0), c(0.0, 0.0)], 1e-16);

        assert_eq!(
            szego_iterate(&w, 3),
            Err(Error::IndexOutOfRange { k: 3, len: 2 })
        );
    }

    #[test]
    fn reverse_examples() {
        let p = ComplexPolynomial::new(vec![c(-0.5, 0.0), c(1.0, 0.0)]);
        assert_poly(&reverse_poly(&p, 1).unwrap(), &[c(1.0, 0.0), c(-0.5, 0.0)], 0.0);
        assert_poly(&reverse_poly(&ComplexPolynomial::monomial(5), 5).unwrap(), &[c(1.0, 0.0)], 0.0);
        let q = ComplexPolynomial::new(vec![c(0.1, 0.2), c(-0.3, 0.7), c(1.0, 0.0)]);
        assert_eq!(reverse_poly(&reverse_poly(&q, 3).unwrap(), 3).unwrap().coeffs()[..3], q.coeffs()[..]);
        assert_eq!(
            reverse_poly(&q, 1),
            Err(Error::DegreeExceedsK { degree: 2, k: 1 })
        );
    }

    #[test]
    fn orthonormal_examples() {
        let w = VerblunskyWord::free(4).unwrap();
        assert_eq!(orthonormal_pth(&w), ComplexPolynomial::monomial(4));
        let w = VerblunskyWord::from_pairs(&[(0.5, 0.0), (0.0, 0.0)]).unwrap();
        let s = 2.0 / 3f64.sqrt();
        assert_poly(&orthonormal_pth(&w), &[c(0.0, 0.0), c(-0.5 * s, 0.0), c(s, 0.0)], 1e-15);
        assert_abs_diff_eq!(orthonormal_pth(&w).leading().re * rho_of(&w).product(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn eval_examples() {
        let i = c(0.0, 1.0);
        let (v, d) = eval_with_derivative(&ComplexPolynomial::monomial(4), i);
        assert_abs_diff_eq!((v - c(1.0, 0.0)).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!((d - c(0.0, -4.0)).norm(), 0.0, epsilon = 1e-15);
        let p = ComplexPolynomial::new(vec![c(0.0, 0.0), c(-0.5, 0.0), c(1.0, 0.0)]);
        assert_eq!(eval_with_derivative(&p, c(1.0, 0.0)), (c(0.5, 0.0), c(1.5, 0.0)));
        assert_eq!(eval_with_derivative(&ComplexPolynomial::one(), c(0.3, -2.0)), (c(1.0, 0.0), c(0.0, 0.0)));
    }

    #[test]
    fn radial_derivative_examples() {
        let z = c64::from_polar(1.0, 0.7);
        assert_abs_diff_eq!(radial_modulus_derivative(&ComplexPolynomial::monomial(6), z, 1e-9).unwrap(), 12.0, epsilon = 1e-13);
        let w = VerblunskyWord::from_pairs(&[(0.5, 0.0), (0.0, 0.0)]).unwrap();
        let phi = orthonormal_pth(&w);
        assert_abs_diff_eq!(radial_modulus_derivative(&phi, c(1.0, 0.0), 1e-9).unwrap(), 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(radial_modulus_derivative(&phi, c(-1.0, 0.0), 1e-9).unwrap(), 10.0, epsilon = 1e-14);
        assert!(matches!(radial_modulus_derivative(&phi, c(1.1, 0.0), 1e-9), Err(Error::NotOnCircle(_))));
    }

    fn word_strategy() -> impl Strategy<Value = Vec<c64>> {
        (1usize..=5).prop_flat_map(|half| {
            prop::collection::vec((0.0f64..0.95, 0.0f64..std::f64::consts::TAU), 2 * half)
                .prop_map(|v| v.into_iter().map(|(r, t)| c64::from_polar(r, t)).collect())
        })
    }

    proptest! {
        #[test]
        fn dual_recurrence_matches_reversal(alpha in word_strategy()) {
            let w = VerblunskyWord::new(alpha).unwrap();
            for k in 0..=w.period() {
                let (phi, star) = szego_iterate(&w, k).unwrap();
                prop_assert_eq!(phi.leading(), c64::new(1.0, 0.0));
                let rev = reverse_poly(&phi, k).unwrap();
                prop_assert!(rev.max_coeff_distance(&star) <= 1e-14);
                for j in 0..64 {
                    let z = c64::from_polar(1.0, std::f64::consts::TAU * j as f64 / 64.0);
                    prop_assert!((phi.eval(z).norm() - star.eval(z).norm()).abs() <= 1e-12);
                }
            }
        }

        #[test]
        fn radial_derivative_matches_finite_difference(alpha in word_strategy(), t in 0.0f64..std::f64::consts::TAU) {
            let w = VerblunskyWord::new(alpha).unwrap();
            let phi = orthonormal_pth(&w);
            let z = c64::from_polar(1.0, t);
            let h = 1e-6;
            let f = |r: f64| phi.eval(z * r).norm_sqr();
            let fd = (f(1.0 + h) - f(1.0 - h)) / (2.0 * h);
            let exact = radial_modulus_derivative(&phi, z, 1e-9).unwrap();
            prop_assert!((fd - exact).abs() <= 1e-6 * exact.abs().max(1.0));
        }
    }
}
