//! Θ blocks, finite CMV matrices `C = LM` and Floquet matrices `E(β) = L_p M_p(β)`.

use nalgebra::DMatrix;

use crate::c64;
use crate::error::{Error, Result};
use crate::opuc::{rho, FinalizedWord, VerblunskyWord};

/// The 2×2 unitary `[[conj α, ρ], [ρ, -α]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaBlock {
    pub entries: [[c64; 2]; 2],
}

impl ThetaBlock {
    pub fn new(alpha: c64, rho: f64) -> Result<Self> {
        let s = alpha.norm_sqr() + rho * rho;
        if !((s - 1.0).abs() <= 1e-12) {
            return Err(Error::NotNormalized(s));
        }
        Ok(Self::unchecked(alpha, rho))
    }

    pub(crate) fn unchecked(alpha: c64, rho: f64) -> Self {
        let r = c64::new(rho, 0.0);
        ThetaBlock {
            entries: [[alpha.conj(), r], [r, -alpha]],
        }
    }

    /// Θ for a coefficient inside the disk, with `ρ` computed from `α`.
    pub fn from_alpha(alpha: c64) -> Self {
        Self::unchecked(alpha, rho(alpha))
    }

    pub fn det(&self) -> c64 {
        let e = &self.entries;
        e[0][0] * e[1][1] - e[0][1] * e[1][0]
    }

    fn place(&self, m: &mut DMatrix<c64>, at: usize) {
        for i in 0..2 {
            for j in 0..2 {
                m[(at + i, at + j)] = self.entries[i][j];
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MatrixKind {
    FiniteCmv,
    Floquet(c64),
    Other,
}

/// Dense square matrix expected to be unitary.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix {
    entries: DMatrix<c64>,
    kind: MatrixKind,
}

impl UnitaryMatrix {
    /// Wraps an arbitrary square matrix; unitarity is not checked here.
    pub fn from_dense(entries: DMatrix<c64>) -> Self {
        assert!(entries.is_square(), "matrix must be square");
        UnitaryMatrix {
            entries,
            kind: MatrixKind::Other,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_dense(DMatrix::identity(n, n))
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    pub fn entries(&self) -> &DMatrix<c64> {
        &self.entries
    }

    pub fn trace(&self) -> c64 {
        self.entries.trace()
    }

    /// Largest entry modulus outside the CMV five-diagonal band and,
    /// for Floquet matrices, the wrap-around corners.
    pub fn structural_violation(&self) -> f64 {
        let n = self.dim();
        let floquet = matches!(self.kind, MatrixKind::Floquet(_));
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let banded = i.abs_diff(j) <= 2;
                let corner = floquet && ((i <= 1 && j == n - 1) || (i + 2 >= n && j == 0));
                if !banded && !corner {
                    worst = worst.max(self.entries[(i, j)].norm());
                }
            }
        }
        worst
    }
}

/// Finite CMV matrix `C = LM` for a word with unimodular last coefficient.
///
/// `L = diag(Θ_0, Θ_2, …, Θ_{n-2})`, `M = diag([1], Θ_1, …, Θ_{n-3}, [conj α_{n-1}])`.
pub fn build_finite_cmv(fin: &FinalizedWord) -> Result<UnitaryMatrix> {
    let n = fin.len();
    if n % 2 != 0 {
        return Err(Error::OddDimension(n));
    }
    let alpha = fin.alpha();
    let mut l = DMatrix::zeros(n, n);
    let mut m = DMatrix::zeros(n, n);
    for k in (0..n).step_by(2) {
        ThetaBlock::from_alpha(alpha[k]).place(&mut l, k);
    }
    m[(0, 0)] = c64::new(1.0, 0.0);
    for k in (1..n.saturating_sub(1)).step_by(2) {
        ThetaBlock::from_alpha(alpha[k]).place(&mut m, k);
    }
    m[(n - 1, n - 1)] = alpha[n - 1].conj();
    Ok(UnitaryMatrix {
        entries: l * m,
        kind: MatrixKind::FiniteCmv,
    })
}

/// Floquet CMV matrix `E(β) = L_p M_p(β)`.
///
/// `M_p(β)` carries `-α_{p-1}` and `conj α_{p-1}` on the diagonal corners and
/// `ρ_{p-1} β^{-1}`, `ρ_{p-1} β` off-diagonal; for `p = 2` it is just that 2×2 corner.
pub fn build_floquet(word: &VerblunskyWord, beta: c64, circle_tol: f64) -> Result<UnitaryMatrix> {
    let bm = beta.norm();
    if (bm - 1.0).abs() > circle_tol {
        return Err(Error::BetaNotUnimodular(bm));
    }
    let p = word.period();
    let alpha = word.alpha();
    let mut l = DMatrix::zeros(p, p);
    let mut m = DMatrix::zeros(p, p);
    for k in (0..p).step_by(2) {
        ThetaBlock::from_alpha(alpha[k]).place(&mut l, k);
    }
    for k in (1..p - 2).step_by(2) {
        ThetaBlock::from_alpha(alpha[k]).place(&mut m, k);
    }
    let a = alpha[p - 1];
    let r = c64::new(rho(a), 0.0);
    m[(0, 0)] = -a;
    m[(0, p - 1)] = r / beta;
    m[(p - 1, 0)] = r * beta;
    m[(p - 1, p - 1)] = a.conj();
    Ok(UnitaryMatrix {
        entries: l * m,
        kind: MatrixKind::Floquet(beta),
    })
}

/// `Tr(U^k)` for `k ∈ {1, 2}` without forming eigenvalues.
pub fn trace_power(u: &UnitaryMatrix, k: u32) -> Result<c64> {
    let e = &u.entries;
    match k {
        1 => Ok(e.trace()),
        2 => {
            let n = u.dim();
            let mut s = c64::new(0.0, 0.0);
            for i in 0..n {
                for j in 0..n {
                    s += e[(i, j)] * e[(j, i)];
                }
            }
            Ok(s)
        }
        _ => Err(Error::UnsupportedPower(k)),
    }
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn determinant(u: &UnitaryMatrix) -> c64 {
    let n = u.dim();
    let mut a = u.entries.clone();
    let mut det = c64::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| a[(x, col)].norm().total_cmp(&a[(y, col)].norm()))
            .unwrap();
        if a[(pivot, col)].norm() == 0.0 {
            return c64::new(0.0, 0.0);
        }
        if pivot != col {
            a.swap_rows(pivot, col);
            det = -det;
        }
        let d = a[(col, col)];
        det *= d;
        for row in col + 1..n {
            let f = a[(row, col)] / d;
            if f != c64::new(0.0, 0.0) {
                for j in col..n {
                    let v = a[(col, j)];
                    a[(row, j)] -= f * v;
                }
            }
        }
    }
    det
}

/// Max-norm of `U U^H - I`.
pub fn unitarity_defect(u: &UnitaryMatrix) -> f64 {
    let n = u.dim();
    let prod = &u.entries * u.entries.adjoint();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((prod[(i, j)] - c64::new(target, 0.0)).norm());
        }
    }
    worst
}
