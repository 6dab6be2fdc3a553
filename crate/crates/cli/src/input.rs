use std::path::Path;

use cmv_core::{c64, Tolerances, VerblunskyWord};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
struct RawTolerances {
    pass: Option<f64>,
    eig: Option<f64>,
    pairing: Option<f64>,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    p: i64,
    alpha: Vec<[f64; 2]>,
    lambda_list: Option<Vec<[f64; 2]>>,
    tolerances: Option<RawTolerances>,
}

/// A validated input document.
#[derive(Debug, Clone, PartialEq)]
pub struct InputDocument {
    pub word: VerblunskyWord,
    pub lambdas: Vec<c64>,
    pub tolerances: Tolerances,
}

impl InputDocument {
    /// Rebuilds a document around an existing word with default settings.
    pub fn from_word(word: VerblunskyWord) -> Self {
        InputDocument {
            word,
            lambdas: vec![c64::new(1.0, 0.0)],
            tolerances: Tolerances::default(),
        }
    }
}

pub fn parse_input_file(path: &Path) -> Result<InputDocument, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    parse_input(&text)
}

/// Parses and validates the JSON input schema
/// `{"p", "alpha", "lambda_list"?, "tolerances"?: {"pass", "eig", "pairing"}}`.
pub fn parse_input(text: &str) -> Result<InputDocument, CliError> {
    let raw: RawDocument = serde_json::from_str(text).map_err(|e| {
        CliError::Parse(format!("line {} column {}: {e}", e.line(), e.column()))
    })?;
    if raw.p <= 0 {
        return Err(CliError::Validation(format!("p must be positive, got {}", raw.p)));
    }
    let p = raw.p as usize;
    if p % 2 != 0 {
        return Err(CliError::Core(cmv_core::Error::OddPeriod(p)));
    }
    if raw.alpha.len() != p {
        return Err(CliError::Validation(format!(
            "length mismatch: p = {p} but alpha has {} entries",
            raw.alpha.len()
        )));
    }
    let word = VerblunskyWord::new(raw.alpha.iter().map(|&[re, im]| c64::new(re, im)).collect())?;

    let mut tolerances = Tolerances::default();
    if let Some(t) = raw.tolerances {
        for (name, value) in [("pass", t.pass), ("eig", t.eig), ("pairing", t.pairing)] {
            if let Some(v) = value {
                if !(v > 0.0 && v.is_finite()) {
                    return Err(CliError::Validation(format!("tolerances.{name} must be positive")));
                }
            }
        }
        tolerances.pass = t.pass.unwrap_or(tolerances.pass);
        tolerances.cluster = t.eig.unwrap_or(tolerances.cluster);
        tolerances.pairing = t.pairing.unwrap_or(tolerances.pairing);
    }

    let lambdas = match raw.lambda_list {
        None => vec![c64::new(1.0, 0.0)],
        Some(list) => list
            .iter()
            .enumerate()
            .map(|(i, &[re, im])| {
                let l = c64::new(re, im);
                if (l.norm() - 1.0).abs() > tolerances.circle {
                    Err(CliError::Validation(format!(
                        "lambda_list[{i}] has modulus {} (must be 1)",
                        l.norm()
                    )))
                } else {
                    Ok(l)
                }
            })
            .collect::<Result<_, _>>()?,
    };
    Ok(InputDocument { word, lambdas, tolerances })
}

/// Parses a `"re,im"` command-line value.
pub fn parse_complex(s: &str) -> Result<c64, String> {
    let (re, im) = s.split_once(',').ok_or_else(|| format!("expected \"re,im\", got {s:?}"))?;
    let re: f64 = re.trim().parse().map_err(|e| format!("{re:?}: {e}"))?;
    let im: f64 = im.trim().parse().map_err(|e| format!("{im:?}: {e}"))?;
    Ok(c64::new(re, im))
}
