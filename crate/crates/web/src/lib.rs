//! Browser bindings: band/gap layout with Dirichlet data, trace residuals and
//! seeded random words. Every export takes and returns JSON text; the plain
//! `*_impl` functions behind them are what the native tests exercise.

use cmv_core::sample::random_word;
use cmv_core::spectra::{circle_arg, dirichlet_weights};
use cmv_core::trace::{full_report, Analysis};
use cmv_core::{c64, Tolerances, VerblunskyWord};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn parse_word(alpha_json: &str) -> Result<VerblunskyWord, String> {
    let pairs: Vec<[f64; 2]> = serde_json::from_str(alpha_json).map_err(|e| format!("alpha: {e}"))?;
    VerblunskyWord::new(pairs.iter().map(|&[re, im]| c64::new(re, im)).collect()).map_err(|e| e.to_string())
}

fn point(z: c64) -> Value {
    json!({ "re": z.re, "im": z.im, "arg": circle_arg(z) })
}

pub fn layout_impl(alpha_json: &str) -> Result<String, String> {
    let word = parse_word(alpha_json)?;
    let tol = Tolerances::default();
    let analysis = Analysis::new(&word, &tol).map_err(|e| e.to_string())?;
    let weights = dirichlet_weights(&word, &analysis.points, &tol).map_err(|e| e.to_string())?;
    let layout = match &analysis.layout {
        Ok(l) => json!({
            "bands": l.bands.iter().map(|a| [point(a.start), point(a.end)]).collect::<Vec<_>>(),
            "gaps": l.gaps.iter().map(|a| [point(a.start), point(a.end)]).collect::<Vec<_>>(),
            "pairing": l.pairing,
            "degenerate": l.degenerate,
        }),
        Err(e) => json!({ "error": e.to_string() }),
    };
    Ok(json!({
        "points": analysis.points.iter().copied().map(point).collect::<Vec<_>>(),
        "weights": weights,
        "plus": analysis.plus.expanded().into_iter().map(point).collect::<Vec<_>>(),
        "minus": analysis.minus.expanded().into_iter().map(point).collect::<Vec<_>>(),
        "layout": layout,
        "warning": analysis.warning.map(|w| w.to_string()),
    })
    .to_string())
}

pub fn residuals_impl(alpha_json: &str, lambda_angle: f64, tol: f64) -> Result<String, String> {
    let word = parse_word(alpha_json)?;
    let tol = Tolerances { pass: tol, ..Default::default() };
    let report = full_report(&word, &[c64::from_polar(1.0, lambda_angle)], &tol);
    let records: Vec<Value> = report
        .records
        .iter()
        .map(|r| {
            json!({
                "formula_id": r.formula.as_str(),
                "applicable": r.applicable,
                "residual": r.residual.is_finite().then_some(r.residual),
                "pass": r.passes(tol.pass),
                "error": r.error,
            })
        })
        .collect();
    Ok(json!({ "records": records, "pass": report.pass }).to_string())
}

pub fn random_word_impl(p: usize, radius_max: f64, seed: u64) -> Result<String, String> {
    if p == 0 || p % 2 != 0 {
        return Err(format!("period must be even and positive, got {p}"));
    }
    if !(radius_max > 0.0 && radius_max < 1.0) {
        return Err(format!("radius must lie in (0, 1), got {radius_max}"));
    }
    let word = random_word(p, radius_max, seed);
    let pairs: Vec<[f64; 2]> = word.alpha().iter().map(|a| [a.re, a.im]).collect();
    Ok(serde_json::to_string(&pairs).expect("pairs serialize"))
}

/// Dirichlet points, weights, band edges and the band/gap layout.
#[wasm_bindgen]
pub fn layout(alpha_json: &str) -> Result<String, JsError> {
    layout_impl(alpha_json).map_err(|e| JsError::new(&e))
}

/// Residual records for every identity at rotation `e^{i·lambda_angle}`.
#[wasm_bindgen]
pub fn residuals(alpha_json: &str, lambda_angle: f64, tol: f64) -> Result<String, JsError> {
    residuals_impl(alpha_json, lambda_angle, tol).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn random_alpha(p: usize, radius_max: f64, seed: u64) -> Result<String, JsError> {
    random_word_impl(p, radius_max, seed).map_err(|e| JsError::new(&e))
}
