//! Both sides of the circular trace identities, evaluated independently.
//!
//! Left-hand sides come from spectra and matrix traces; right-hand sides are
//! closed-form expressions in the coefficients. Records with the `_alt`
//! suffix carry a second right-hand side for the same left-hand side:
//! `det1`, `det2` and `det1L` as written hold only up to complex conjugation
//! of the constant (the determinant of the twisted CMV matrix is
//! `-(1 + conj α_{p-1}) / (1 + α_{p-1})`), and the first term of `tr2` needs
//! `conj(α_{p-1})² - ((1 + conj α_{p-1}) / (1 + α_{p-1}))²`.

use std::fmt;

use crate::c64;
use crate::cmv::{build_finite_cmv, build_floquet, determinant, trace_power, UnitaryMatrix};
use crate::error::{Error, Result};
use crate::opuc::{rho, szego_iterate, FinalizedWord, VerblunskyWord};
use crate::spectra::{
    band_edges, band_layout, dirichlet_polynomial, matching_distance, tilde_word, unitary_eigenvalues,
    BandStructure, UnitarySpectrum, Warning,
};
use crate::tolerances::Tolerances;

/// Band edges of a word and of its rotation may differ by at most this much.
pub const EDGE_INVARIANCE_TOL: f64 = 1e-8;
/// Allowed disagreement between two evaluation paths of the same quantity.
pub const CROSS_CHECK_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormulaId {
    Polys2,
    Det1,
    Det1Alt,
    Det2,
    Det2Alt,
    Tr1,
    Tr2,
    Tr2Alt,
    Det1L,
    Det1LAlt,
    Tr1L,
}

impl FormulaId {
    pub fn as_str(&self) -> &'static str {
        match self {
            FormulaId::Polys2 => "polys2",
            FormulaId::Det1 => "det1",
            FormulaId::Det1Alt => "det1_alt",
            FormulaId::Det2 => "det2",
            FormulaId::Det2Alt => "det2_alt",
            FormulaId::Tr1 => "tr1",
            FormulaId::Tr2 => "tr2",
            FormulaId::Tr2Alt => "tr2_alt",
            FormulaId::Det1L => "det1L",
            FormulaId::Det1LAlt => "det1L_alt",
            FormulaId::Tr1L => "tr1L",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            FormulaId::Polys2,
            FormulaId::Det1,
            FormulaId::Det1Alt,
            FormulaId::Det2,
            FormulaId::Det2Alt,
            FormulaId::Tr1,
            FormulaId::Tr2,
            FormulaId::Tr2Alt,
            FormulaId::Det1L,
            FormulaId::Det1LAlt,
            FormulaId::Tr1L,
        ]
        .into_iter()
        .find(|f| f.as_str() == s)
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A second evaluation of a quantity that must agree with the first.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossCheck {
    pub description: &'static str,
    pub discrepancy: f64,
    pub tolerance: f64,
}

impl CrossCheck {
    pub fn ok(&self) -> bool {
        self.discrepancy <= self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualRecord {
    pub formula: FormulaId,
    pub lambda: Option<c64>,
    pub lhs: c64,
    pub rhs: c64,
    /// `|lhs - rhs|`.
    pub residual: f64,
    pub applicable: bool,
    pub lhs_method: &'static str,
    pub rhs_method: &'static str,
    pub cross_checks: Vec<CrossCheck>,
    /// Set when the record could not be evaluated (or only partially).
    pub error: Option<String>,
}

impl ResidualRecord {
    fn new(formula: FormulaId, lhs: c64, rhs: c64, lhs_method: &'static str, rhs_method: &'static str) -> Self {
        ResidualRecord {
            formula,
            lambda: None,
            lhs,
            rhs,
            residual: (lhs - rhs).norm(),
            applicable: true,
            lhs_method,
            rhs_method,
            cross_checks: Vec::new(),
            error: None,
        }
    }

    fn failed(formula: FormulaId, err: &Error) -> Self {
        let nan = c64::new(f64::NAN, f64::NAN);
        ResidualRecord {
            formula,
            lambda: None,
            lhs: nan,
            rhs: nan,
            residual: f64::NAN,
            applicable: true,
            lhs_method: "",
            rhs_method: "",
            cross_checks: Vec::new(),
            error: Some(err.to_string()),
        }
    }

    fn not_applicable(formula: FormulaId, err: &Error) -> Self {
        ResidualRecord {
            applicable: false,
            ..Self::failed(formula, err)
        }
    }

    fn with_lambda(mut self, lambda: c64) -> Self {
        self.lambda = Some(lambda);
        self
    }

    /// Whether this record meets `tol`; non-applicable records always pass.
    pub fn passes(&self, tol: f64) -> bool {
        if !self.applicable {
            return true;
        }
        self.error.is_none() && self.residual <= tol && self.cross_checks.iter().all(CrossCheck::ok)
    }
}

/// All spectral data of one word needed by the identities.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub word: VerblunskyWord,
    pub tilde: FinalizedWord,
    pub warning: Option<Warning>,
    pub cmv: UnitaryMatrix,
    pub floquet_plus: UnitaryMatrix,
    pub floquet_minus: UnitaryMatrix,
    /// Dirichlet points with multiplicity, sorted by argument.
    pub points: Vec<c64>,
    pub plus: UnitarySpectrum,
    pub minus: UnitarySpectrum,
    pub layout: std::result::Result<BandStructure, Error>,
}

impl Analysis {
    pub fn new(word: &VerblunskyWord, tol: &Tolerances) -> Result<Self> {
        let (tilde, warning) = tilde_word(word);
        let cmv = build_finite_cmv(&tilde)?;
        let points = unitary_eigenvalues(&cmv, tol.cluster)?.expanded();
        let floquet_plus = build_floquet(word, c64::new(1.0, 0.0), tol.circle)?;
        let floquet_minus = build_floquet(word, c64::new(-1.0, 0.0), tol.circle)?;
        let (plus, minus) = band_edges(word, tol)?;
        let layout = band_layout(&plus, &minus, &points, tol);
        Ok(Analysis {
            word: word.clone(),
            tilde,
            warning,
            cmv,
            floquet_plus,
            floquet_minus,
            points,
            plus,
            minus,
            layout,
        })
    }

    fn layout(&self) -> Result<&BandStructure> {
        self.layout
            .as_ref()
            .map_err(|e| Error::LayoutUnavailable(e.to_string()))
    }

    /// `½ (Tr E(+1)^k + Tr E(-1)^k)`.
    fn floquet_trace_mean(&self, k: u32) -> c64 {
        let a = trace_power(&self.floquet_plus, k).expect("k is 1 or 2");
        let b = trace_power(&self.floquet_minus, k).expect("k is 1 or 2");
        0.5 * (a + b)
    }
}

fn last_ratio(a: c64) -> c64 {
    (1.0 + a) / (1.0 + a.conj())
}

/// `Φ_p - Φ_p^* = (1 + α_{p-1}) Φ̃_p`, compared coefficientwise.
///
/// The reported lhs/rhs are the coefficients at the worst index.
pub fn residual_polys2(word: &VerblunskyWord) -> ResidualRecord {
    let p = word.period();
    let left = dirichlet_polynomial(word);
    let (tilde, _) = tilde_word(word);
    let (tilde_phi, _) = szego_iterate(&tilde, p).expect("k = p is in range");
    let right = tilde_phi.scale(1.0 + word.last());
    let worst = (0..=p)
        .max_by(|&i, &j| {
            (left.coeff(i) - right.coeff(i))
                .norm()
                .total_cmp(&(left.coeff(j) - right.coeff(j)).norm())
        })
        .unwrap_or(0);
    ResidualRecord::new(
        FormulaId::Polys2,
        left.coeff(worst),
        right.coeff(worst),
        "periodic Szego recurrence",
        "twisted finite recurrence",
    )
}

/// Products of Dirichlet points against the closed form `-(1 + α_{p-1}) / (1 + conj α_{p-1})`.
///
/// The product of eigenvalues is cross-checked against `det C` from elimination.
fn det1_records(analysis: &Analysis, formula: FormulaId, alt: FormulaId) -> [ResidualRecord; 2] {
    let lhs: c64 = analysis.points.iter().product();
    let a = analysis.word.last();
    let check = CrossCheck {
        description: "product of eigenvalues vs pivoted-elimination determinant",
        discrepancy: (lhs - determinant(&analysis.cmv)).norm(),
        tolerance: CROSS_CHECK_TOL,
    };
    let mut printed = ResidualRecord::new(formula, lhs, -last_ratio(a), "eigenvalues of C", "-(1+a)/(1+conj a)");
    printed.cross_checks.push(check.clone());
    let mut alt_rec = ResidualRecord::new(alt, lhs, -last_ratio(a).conj(), "eigenvalues of C", "-(1+conj a)/(1+a)");
    alt_rec.cross_checks.push(check);
    [printed, alt_rec]
}

pub fn residual_det1(analysis: &Analysis) -> [ResidualRecord; 2] {
    det1_records(analysis, FormulaId::Det1, FormulaId::Det1Alt)
}

/// `∏ ζ_{2j-1} ζ_{2j} z_j^{-2}` from the paired layout against `((1 + conj a)/(1 + a))²`.
pub fn residual_det2(analysis: &Analysis) -> [ResidualRecord; 2] {
    let layout = match analysis.layout() {
        Ok(l) => l,
        Err(e) => return [ResidualRecord::failed(FormulaId::Det2, &e), ResidualRecord::failed(FormulaId::Det2Alt, &e)],
    };
    let lhs: c64 = layout
        .gaps
        .iter()
        .zip(&layout.pairing)
        .map(|(g, &k)| g.start * g.end / (analysis.points[k] * analysis.points[k]))
        .product();
    let r = last_ratio(analysis.word.last());
    [
        ResidualRecord::new(FormulaId::Det2, lhs, (1.0 / r).powi(2), "gap endpoints and paired points", "((1+conj a)/(1+a))^2"),
        ResidualRecord::new(FormulaId::Det2Alt, lhs, r.powi(2), "gap endpoints and paired points", "((1+a)/(1+conj a))^2"),
    ]
}

fn tr1_rhs(word: &VerblunskyWord) -> c64 {
    let alpha = word.alpha();
    let p = alpha.len();
    let a = alpha[p - 1];
    -alpha[0].conj() * (1.0 + a) + alpha[p - 2] * (1.0 - a.norm_sqr()) / (1.0 + a)
}

/// Sum over gaps of `(ζ_{2j-1} + ζ_{2j})/2 - z_j`.
///
/// The primary lhs is `½(Tr E(+1) + Tr E(-1)) - Tr C`; when the layout is
/// available the paired eigenvalue sum is recorded as a cross-check.
fn tr1_record(edges: &Analysis, dirichlet: &Analysis, formula: FormulaId) -> ResidualRecord {
    let lhs = edges.floquet_trace_mean(1) - dirichlet.cmv.trace();
    let mut rec = ResidualRecord::new(formula, lhs, tr1_rhs(&dirichlet.word), "matrix traces", "coefficients");
    match edges.layout() {
        Ok(layout) => {
            let paired: c64 = layout
                .gaps
                .iter()
                .enumerate()
                .map(|(j, g)| 0.5 * (g.start + g.end) - dirichlet.points[layout.pairing[j]])
                .sum();
            rec.cross_checks.push(CrossCheck {
                description: "matrix traces vs paired band edges and Dirichlet points",
                discrepancy: (lhs - paired).norm(),
                tolerance: CROSS_CHECK_TOL,
            });
        }
        Err(_) => rec.lhs_method = "matrix traces (layout unavailable)",
    }
    rec
}

pub fn residual_tr1(analysis: &Analysis) -> ResidualRecord {
    tr1_record(analysis, analysis, FormulaId::Tr1)
}

/// Closed forms for `½ Tr(E(+1)² + E(-1)²) - Tr C²`: the displayed one, and the
/// one with the sign of the `((1 + conj a)/(1 + a))²` term flipped.
fn tr2_rhs(word: &VerblunskyWord) -> (c64, c64) {
    let al = word.alpha();
    let p = al.len();
    let a = al[p - 1];
    let r2 = |k: usize| rho(al[k]).powi(2);
    let ratio_sq = ((1.0 + a.conj()) / (1.0 + a)).powi(2);
    let rest = -al[0].conj().powi(2) * (1.0 - a * a) + 2.0 * al[p - 3] * r2(p - 2) * r2(p - 1) / (1.0 + a)
        - 2.0 * r2(0) * al[1].conj() * (1.0 + a)
        - 2.0 * al[p - 2] * r2(p - 1) * al[0].conj();
    let lead = al[p - 2].powi(2);
    (
        lead * (a.conj().powi(2) + ratio_sq) + rest,
        lead * (a.conj().powi(2) - ratio_sq) + rest,
    )
}

/// Second-power trace identity; defined for `p >= 4` only.
pub fn residual_tr2(analysis: &Analysis) -> [ResidualRecord; 2] {
    let p = analysis.word.period();
    if p < 4 {
        let e = Error::PeriodTooSmall(p);
        return [ResidualRecord::not_applicable(FormulaId::Tr2, &e), ResidualRecord::not_applicable(FormulaId::Tr2Alt, &e)];
    }
    let lhs = analysis.floquet_trace_mean(2) - trace_power(&analysis.cmv, 2).expect("k = 2");
    let edge_side: c64 = analysis.plus.expanded().iter().chain(&analysis.minus.expanded()).map(|z| 0.5 * z * z).sum::<c64>()
        - analysis.points.iter().map(|z| z * z).sum::<c64>();
    let check = CrossCheck {
        description: "matrix traces vs squared eigenvalues",
        discrepancy: (lhs - edge_side).norm(),
        tolerance: CROSS_CHECK_TOL,
    };
    let (printed, alt) = tr2_rhs(&analysis.word);
    let mut a = ResidualRecord::new(FormulaId::Tr2, lhs, printed, "matrix traces", "coefficients");
    a.cross_checks.push(check.clone());
    let mut b = ResidualRecord::new(FormulaId::Tr2Alt, lhs, alt, "matrix traces", "coefficients (sign-corrected)");
    b.cross_checks.push(check);
    [a, b]
}

/// Multiplies every coefficient by the unimodular `λ`.
pub fn rotate_word(word: &VerblunskyWord, lambda: c64, circle_tol: f64) -> Result<VerblunskyWord> {
    let m = lambda.norm();
    if !((m - 1.0).abs() <= circle_tol) {
        return Err(Error::LambdaNotUnimodular(m));
    }
    let lambda = if m == 1.0 { lambda } else { lambda / m };
    VerblunskyWord::new(word.alpha().iter().map(|&a| lambda * a).collect())
}

/// `det1L` (and its `_alt`) plus `tr1L` for the rotated word.
///
/// Dirichlet points come from the rotated word, band edges from the original
/// one. The rotated word's own band edges are recomputed and compared to the
/// originals; that comparison is attached to `tr1L` as a cross-check.
pub fn aleksandrov_residuals(analysis: &Analysis, lambda: c64, tol: &Tolerances) -> Result<Vec<ResidualRecord>> {
    let rotated = rotate_word(&analysis.word, lambda, tol.circle)?;
    let rot = Analysis::new(&rotated, tol)?;
    let [det, det_alt] = det1_records(&rot, FormulaId::Det1L, FormulaId::Det1LAlt);
    let mut tr = tr1_record(analysis, &rot, FormulaId::Tr1L);
    let shift = matching_distance(&analysis.plus.expanded(), &rot.plus.expanded())
        .max(matching_distance(&analysis.minus.expanded(), &rot.minus.expanded()));
    tr.cross_checks.push(CrossCheck {
        description: "band edges of rotated word vs original",
        discrepancy: shift,
        tolerance: EDGE_INVARIANCE_TOL,
    });
    Ok(vec![det.with_lambda(lambda), det_alt.with_lambda(lambda), tr.with_lambda(lambda)])
}

#[derive(Debug, Clone)]
pub struct ResidualReport {
    pub word: VerblunskyWord,
    pub lambdas: Vec<c64>,
    pub records: Vec<ResidualRecord>,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl ResidualReport {
    pub fn record(&self, formula: FormulaId, lambda: Option<c64>) -> Option<&ResidualRecord> {
        self.records.iter().find(|r| r.formula == formula && r.lambda == lambda)
    }
}

/// Runs every identity for `word` and each `λ`; failures become error records.
pub fn full_report(word: &VerblunskyWord, lambdas: &[c64], tol: &Tolerances) -> ResidualReport {
    let mut records = vec![residual_polys2(word)];
    match Analysis::new(word, tol) {
        Ok(analysis) => {
            records.extend(residual_det1(&analysis));
            records.extend(residual_det2(&analysis));
            records.push(residual_tr1(&analysis));
            records.extend(residual_tr2(&analysis));
            for &lambda in lambdas {
                match aleksandrov_residuals(&analysis, lambda, tol) {
                    Ok(recs) => records.extend(recs),
                    Err(e) => {
                        for f in [FormulaId::Det1L, FormulaId::Det1LAlt, FormulaId::Tr1L] {
                            records.push(ResidualRecord::failed(f, &e).with_lambda(lambda));
                        }
                    }
                }
            }
        }
        Err(e) => {
            for f in [FormulaId::Det1, FormulaId::Det1Alt, FormulaId::Det2, FormulaId::Det2Alt, FormulaId::Tr1, FormulaId::Tr2, FormulaId::Tr2Alt] {
                records.push(ResidualRecord::failed(f, &e));
            }
        }
    }
    let applicable = records.iter().filter(|r| r.applicable);
    let max_residual = applicable.clone().map(|r| r.residual).fold(0.0, |m: f64, r| if r.is_nan() { f64::NAN } else { m.max(r) });
    let pass = records.iter().all(|r| r.passes(tol.pass));
    ResidualReport {
        word: word.clone(),
        lambdas: lambdas.to_vec(),
        records,
        max_residual,
        tolerance: tol.pass,
        pass,
    }
}
