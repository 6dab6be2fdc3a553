//! Serializable analysis reports and their JSON/CSV renderings.

use cmv_core::spectra::{circle_arg, dirichlet_weights, Arc};
use cmv_core::trace::{full_report, Analysis, ResidualRecord, ResidualReport};
use cmv_core::{c64, VerblunskyWord};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, EXIT_NUMERICAL, EXIT_RESIDUAL};
use crate::input::InputDocument;

pub type Pair = [f64; 2];

fn pair(z: c64) -> Pair {
    [z.re, z.im]
}

fn finite_pair(z: c64) -> Option<Pair> {
    (z.re.is_finite() && z.im.is_finite()).then_some(pair(z))
}

fn arc_pair(a: &Arc) -> [Pair; 2] {
    [pair(a.start), pair(a.end)]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirichletOut {
    pub points: Vec<Pair>,
    pub weights: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgesOut {
    pub plus: Vec<Pair>,
    pub minus: Vec<Pair>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayoutOut {
    pub bands: Vec<[Pair; 2]>,
    pub gaps: Vec<[Pair; 2]>,
    pub pairing: Vec<usize>,
    pub degenerate: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossCheckOut {
    pub description: String,
    pub discrepancy: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecordOut {
    pub formula_id: String,
    pub lambda: Option<Pair>,
    pub lhs: Option<Pair>,
    pub rhs: Option<Pair>,
    pub residual: Option<f64>,
    pub applicable: bool,
    pub pass: bool,
    pub lhs_method: String,
    pub rhs_method: String,
    pub cross_checks: Vec<CrossCheckOut>,
    pub error: Option<String>,
}

impl RecordOut {
    pub fn from_record(r: &ResidualRecord, tol: f64) -> Self {
        RecordOut {
            formula_id: r.formula.to_string(),
            lambda: r.lambda.map(pair),
            lhs: finite_pair(r.lhs),
            rhs: finite_pair(r.rhs),
            residual: r.residual.is_finite().then_some(r.residual),
            applicable: r.applicable,
            pass: r.passes(tol),
            lhs_method: r.lhs_method.to_string(),
            rhs_method: r.rhs_method.to_string(),
            cross_checks: r
                .cross_checks
                .iter()
                .map(|c| CrossCheckOut {
                    description: c.description.to_string(),
                    discrepancy: c.discrepancy,
                    tolerance: c.tolerance,
                })
                .collect(),
            error: r.error.clone(),
        }
    }
}

/// Everything `analyze` reports for one word.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub word: Vec<Pair>,
    pub tilde_word: Vec<Pair>,
    pub dirichlet: DirichletOut,
    pub band_edges: EdgesOut,
    pub layout: Option<LayoutOut>,
    pub residuals: Vec<RecordOut>,
    pub max_residual: Option<f64>,
    pub tolerance: f64,
    pub warnings: Vec<String>,
    pub pass: bool,
}

impl AnalyzeReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

/// A finished report plus the process exit status it implies.
#[derive(Debug, Clone)]
pub struct AnalyzeOutcome {
    pub report: AnalyzeReport,
    pub exit_code: i32,
}

pub fn residuals_out(report: &ResidualReport) -> Vec<RecordOut> {
    report
        .records
        .iter()
        .map(|r| RecordOut::from_record(r, report.tolerance))
        .collect()
}

/// Runs the full analysis for a document.
///
/// Exit status is 0 when every applicable record passes, 1 on a residual
/// failure and 3 when the band layout could not be built.
pub fn run_analyze(doc: &InputDocument) -> Result<AnalyzeOutcome, CliError> {
    let tol = &doc.tolerances;
    let analysis = Analysis::new(&doc.word, tol)?;
    let weights = dirichlet_weights(&doc.word, &analysis.points, tol)?;
    let residual_report = full_report(&doc.word, &doc.lambdas, tol);

    let mut warnings: Vec<String> = analysis.warning.iter().map(|w| w.to_string()).collect();
    let layout = match &analysis.layout {
        Ok(l) => Some(LayoutOut {
            bands: l.bands.iter().map(arc_pair).collect(),
            gaps: l.gaps.iter().map(arc_pair).collect(),
            pairing: l.pairing.clone(),
            degenerate: l.degenerate.clone(),
        }),
        Err(e) => {
            warnings.push(format!("layout unavailable: {e}"));
            None
        }
    };
    let report = AnalyzeReport {
        word: word_pairs(&doc.word),
        tilde_word: analysis.tilde.alpha().iter().copied().map(pair).collect(),
        dirichlet: DirichletOut {
            points: analysis.points.iter().copied().map(pair).collect(),
            weights,
        },
        band_edges: EdgesOut {
            plus: analysis.plus.expanded().into_iter().map(pair).collect(),
            minus: analysis.minus.expanded().into_iter().map(pair).collect(),
        },
        layout,
        residuals: residuals_out(&residual_report),
        max_residual: residual_report.max_residual.is_finite().then_some(residual_report.max_residual),
        tolerance: residual_report.tolerance,
        warnings,
        pass: residual_report.pass,
    };
    let exit_code = if report.layout.is_none() {
        EXIT_NUMERICAL
    } else if report.pass {
        0
    } else {
        EXIT_RESIDUAL
    };
    Ok(AnalyzeOutcome { report, exit_code })
}

pub fn word_pairs(word: &VerblunskyWord) -> Vec<Pair> {
    word.alpha().iter().copied().map(pair).collect()
}

fn arg_of(p: Pair) -> f64 {
    circle_arg(c64::new(p[0], p[1]))
}

/// `index,re,im,arg_radians,weight`
pub fn dirichlet_csv(d: &DirichletOut) -> String {
    let mut out = String::from("index,re,im,arg_radians,weight\n");
    for (i, (p, w)) in d.points.iter().zip(&d.weights).enumerate() {
        out += &format!("{i},{},{},{},{w}\n", p[0], p[1], arg_of(*p));
    }
    out
}

/// One row per band `j`: the Dirichlet point of the gap that follows the
/// band, the band's end-point arguments and whether that gap is collapsed.
pub fn bands_csv(report: &AnalyzeReport) -> Option<String> {
    let layout = report.layout.as_ref()?;
    let mut out = String::from("index,re,im,arg_radians,band_start,band_end,degenerate\n");
    for (j, band) in layout.bands.iter().enumerate() {
        let z = report.dirichlet.points[layout.pairing[j]];
        out += &format!(
            "{j},{},{},{},{},{},{}\n",
            z[0],
            z[1],
            arg_of(z),
            arg_of(band[0]),
            arg_of(band[1]),
            layout.degenerate[j]
        );
    }
    Some(out)
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// `formula_id,lambda_re,lambda_im,lhs_re,lhs_im,rhs_re,rhs_im,residual,applicable,pass`
pub fn residuals_csv(records: &[RecordOut]) -> String {
    let mut out = String::from("formula_id,lambda_re,lambda_im,lhs_re,lhs_im,rhs_re,rhs_im,residual,applicable,pass\n");
    for r in records {
        out += &format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            r.formula_id,
            opt(r.lambda.map(|l| l[0])),
            opt(r.lambda.map(|l| l[1])),
            opt(r.lhs.map(|l| l[0])),
            opt(r.lhs.map(|l| l[1])),
            opt(r.rhs.map(|l| l[0])),
            opt(r.rhs.map(|l| l[1])),
            opt(r.residual),
            r.applicable,
            r.pass
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::input::parse_input;

    #[test]
    fn fixture_report() {
        let doc = parse_input(r#"{"p":2,"alpha":[[0.5,0],[0,0]]}"#).unwrap();
        let out = run_analyze(&doc).unwrap();
        assert_eq!(out.exit_code, 0);
        let r = &out.report;
        assert!(r.pass);
        assert!((r.dirichlet.weights[0] - 0.75).abs() < 1e-12);
        assert!((r.dirichlet.weights[1] - 0.25).abs() < 1e-12);
        assert!((r.dirichlet.points[0][0] - 1.0).abs() < 1e-12);
        assert!((r.dirichlet.points[1][0] + 1.0).abs() < 1e-12);
        let tr2 = r.residuals.iter().find(|x| x.formula_id == "tr2").unwrap();
        assert!(!tr2.applicable);
    }

    #[test]
    fn free_word_report() {
        let doc = parse_input(r#"{"p":4,"alpha":[[0,0],[0,0],[0,0],[0,0]]}"#).unwrap();
        let r = run_analyze(&doc).unwrap().report;
        assert_eq!(r.layout.as_ref().unwrap().degenerate, vec![true; 4]);
        assert!(r.dirichlet.weights.iter().all(|w| (w - 0.25).abs() < 1e-12));
    }

    #[test]
    fn ill_conditioned_word_warns() {
        let doc = parse_input(r#"{"p":2,"alpha":[[0.3,0.1],[-0.9999999,0]]}"#).unwrap();
        let r = run_analyze(&doc).unwrap().report;
        assert!(r.warnings.iter().any(|w| w.starts_with("IllConditioned")), "{:?}", r.warnings);
    }

    #[test]
    fn csv_headers() {
        let doc = parse_input(r#"{"p":2,"alpha":[[0.5,0],[0,0]]}"#).unwrap();
        let r = run_analyze(&doc).unwrap().report;
        let d = dirichlet_csv(&r.dirichlet);
        assert!(d.starts_with("index,re,im,arg_radians,weight\n0,1,"));
        assert_eq!(d.lines().count(), 3);
        let b = bands_csv(&r).unwrap();
        assert_eq!(b.lines().next().unwrap(), "index,re,im,arg_radians,band_start,band_end,degenerate");
        assert!(residuals_csv(&r.residuals).lines().count() > 5);
    }
}
