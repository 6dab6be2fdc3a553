//! Seeded random-ensemble sweeps.

use std::collections::BTreeMap;

use cmv_core::sample::random_word;
use cmv_core::trace::full_report;
use cmv_core::{c64, Tolerances};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::report::{word_pairs, Pair};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub periods: Vec<usize>,
    pub samples_per_period: usize,
    pub radius_max: f64,
    pub base_seed: u64,
}

impl EnsembleSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.radius_max > 0.0 && self.radius_max < 1.0) {
            return Err(CliError::Validation(format!(
                "radius_max must lie in (0, 1), got {}",
                self.radius_max
            )));
        }
        if self.samples_per_period == 0 {
            return Err(CliError::Validation("samples_per_period must be at least 1".into()));
        }
        if let Some(&p) = self.periods.iter().find(|&&p| p == 0 || p % 2 != 0) {
            return Err(CliError::Core(cmv_core::Error::OddPeriod(p)));
        }
        Ok(())
    }
}

/// The rotation parameters applied to every sweep sample: `1, -1, i, e^{iπ/5}`.
pub fn sweep_lambdas() -> Vec<c64> {
    vec![
        c64::new(1.0, 0.0),
        c64::new(-1.0, 0.0),
        c64::new(0.0, 1.0),
        c64::from_polar(1.0, std::f64::consts::PI / 5.0),
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleFailure {
    pub sample: usize,
    pub seed: u64,
    pub formula_id: String,
    pub lambda: Option<Pair>,
    pub residual: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodSummary {
    pub p: usize,
    pub samples: usize,
    /// Largest residual per formula id over all samples and rotations.
    pub max_residual: BTreeMap<String, f64>,
    /// Largest cross-check discrepancy per formula id.
    pub max_cross_check: BTreeMap<String, f64>,
    pub failures: Vec<SampleFailure>,
    /// Word of the first failing sample, for reproduction.
    pub first_failing_word: Option<Vec<Pair>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub spec: EnsembleSpec,
    pub tolerance: f64,
    pub lambdas: Vec<Pair>,
    pub periods: Vec<PeriodSummary>,
    pub pass: bool,
}

impl SweepSummary {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }

    /// Max residual of one formula over all periods (NaN-free).
    pub fn max_for(&self, formula_id: &str) -> f64 {
        self.periods
            .iter()
            .filter_map(|p| p.max_residual.get(formula_id))
            .fold(0.0, |a, &b| a.max(b))
    }
}

/// Runs `full_report` on `samples_per_period` words for each period, with
/// sample `i` drawn from seed `base_seed + i`. Samples run in parallel; the
/// result is assembled in (period, sample) order, so it does not depend on
/// scheduling.
pub fn run_random_sweep(spec: &EnsembleSpec, tol: &Tolerances) -> Result<SweepSummary, CliError> {
    spec.validate()?;
    let lambdas = sweep_lambdas();
    let mut periods = Vec::new();
    let mut pass = true;
    for &p in &spec.periods {
        let reports: Vec<_> = (0..spec.samples_per_period)
            .into_par_iter()
            .map(|i| {
                let seed = spec.base_seed.wrapping_add(i as u64);
                let word = random_word(p, spec.radius_max, seed);
                (i, seed, full_report(&word, &lambdas, tol))
            })
            .collect();
        let mut max_residual = BTreeMap::new();
        let mut max_cross_check = BTreeMap::new();
        let mut failures = Vec::new();
        let mut first_failing_word = None;
        for (i, seed, report) in &reports {
            for r in report.records.iter().filter(|r| r.applicable) {
                let id = r.formula.to_string();
                if r.residual.is_finite() {
                    let e = max_residual.entry(id.clone()).or_insert(0.0f64);
                    *e = e.max(r.residual);
                }
                for c in &r.cross_checks {
                    let e = max_cross_check.entry(id.clone()).or_insert(0.0f64);
                    *e = e.max(c.discrepancy);
                }
                if !r.passes(tol.pass) {
                    if first_failing_word.is_none() {
                        first_failing_word = Some(word_pairs(&report.word));
                    }
                    failures.push(SampleFailure {
                        sample: *i,
                        seed: *seed,
                        formula_id: id,
                        lambda: r.lambda.map(|l| [l.re, l.im]),
                        residual: r.residual.is_finite().then_some(r.residual),
                        error: r.error.clone(),
                    });
                }
            }
        }
        pass &= failures.is_empty();
        periods.push(PeriodSummary {
            p,
            samples: spec.samples_per_period,
            max_residual,
            max_cross_check,
            failures,
            first_failing_word,
        });
    }
    Ok(SweepSummary {
        spec: spec.clone(),
        tolerance: tol.pass,
        lambdas: lambdas.iter().map(|l| [l.re, l.im]).collect(),
        periods,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_specs() {
        let mut spec = EnsembleSpec { periods: vec![2], samples_per_period: 1, radius_max: 1.0, base_seed: 0 };
        assert!(matches!(run_random_sweep(&spec, &Tolerances::default()), Err(CliError::Validation(_))));
        spec.radius_max = 0.5;
        spec.samples_per_period = 0;
        assert!(spec.validate().is_err());
        spec.samples_per_period = 1;
        spec.periods = vec![3];
        assert!(spec.validate().is_err());
    }

    #[test]
    fn small_sweep_is_deterministic() {
        let spec = EnsembleSpec { periods: vec![2, 4], samples_per_period: 5, radius_max: 0.9, base_seed: 42 };
        let a = run_random_sweep(&spec, &Tolerances::default()).unwrap().to_json();
        let b = run_random_sweep(&spec, &Tolerances::default()).unwrap().to_json();
        assert_eq!(a, b);
    }
}
