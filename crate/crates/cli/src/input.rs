//! Input document schema.
//!
//! The wire format is fixed: rationals are strings `p` or `p/q` (never
//! floats), matrices are row-major arrays of such strings, and a document
//! carries the ambient dimension, the mode and the generator list:
//!
//! ```json
//! {"dimension": 2, "mode": "torus",
//!  "generators": [[["1","1"],["1","0"]]],
//!  "labels": ["a"]}
//! ```

use serde::{Deserialize, Serialize};

use soldyn_core::groupdyn::{GenSet, GenSetError, Mode};
use soldyn_core::matrix::{QVec, RatMatrix};
use soldyn_core::rat::{format_rat, parse_rat};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDoc {
    pub dimension: usize,
    pub mode: String,
    pub generators: Vec<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl InputDoc {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("invalid input JSON: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn mode(&self) -> Result<Mode, CliError> {
        match self.mode.as_str() {
            "torus" => Ok(Mode::Torus),
            "solenoid" => Ok(Mode::Solenoid),
            other => Err(CliError::Parse(format!(
                "unknown mode {other:?} (expected \"torus\" or \"solenoid\")"
            ))),
        }
    }

    /// Validate and convert to a generator set. Dimension-0 documents and
    /// malformed rationals are parse errors; a non-invertible generator is
    /// reported separately so the caller can exit with the dedicated code.
    pub fn to_genset(&self) -> Result<GenSet, CliError> {
        if self.dimension == 0 {
            return Err(CliError::Parse("dimension must be at least 1".into()));
        }
        let mode = self.mode()?;
        let mut gens = Vec::with_capacity(self.generators.len());
        for (gi, rows) in self.generators.iter().enumerate() {
            if rows.len() != self.dimension {
                return Err(CliError::Parse(format!(
                    "generator {} has {} rows, expected {}",
                    gi + 1,
                    rows.len(),
                    self.dimension
                )));
            }
            let mut parsed_rows = Vec::with_capacity(rows.len());
            for (ri, row) in rows.iter().enumerate() {
                if row.len() != self.dimension {
                    return Err(CliError::Parse(format!(
                        "generator {} row {} has {} entries, expected {}",
                        gi + 1,
                        ri + 1,
                        row.len(),
                        self.dimension
                    )));
                }
                let mut parsed = Vec::with_capacity(row.len());
                for s in row {
                    parsed
                        .push(parse_rat(s).map_err(|e| {
                            CliError::Parse(format!("generator {}: {}", gi + 1, e))
                        })?);
                }
                parsed_rows.push(parsed);
            }
            gens.push(
                RatMatrix::from_rows(parsed_rows)
                    .map_err(|e| CliError::Parse(format!("generator {}: {}", gi + 1, e)))?,
            );
        }
        GenSet::new(mode, gens, self.labels.clone()).map_err(|e| match e {
            GenSetError::NotInvertible { index } => {
                CliError::NotInvertible(format!("generator {} is not invertible", index + 1))
            }
            other => CliError::Parse(other.to_string()),
        })
    }

    pub fn from_genset(g: &GenSet) -> Self {
        InputDoc {
            dimension: g.dim(),
            mode: g.mode().to_string(),
            generators: g.gens().iter().map(matrix_strings).collect(),
            labels: g.labels().map(|ls| ls.to_vec()),
        }
    }
}

pub fn matrix_strings(m: &RatMatrix) -> Vec<Vec<String>> {
    (0..m.dim())
        .map(|i| (0..m.dim()).map(|j| format_rat(m.entry(i, j))).collect())
        .collect()
}

pub fn vector_strings(v: &QVec) -> Vec<String> {
    v.coords().iter().map(format_rat).collect()
}

/// Parse a translation list: comma-separated tokens, each either `eK`
/// (standard basis vector, 1-based) or a colon-separated rational vector
/// such as `1:0` or `1/2:-3`.
pub fn parse_translations(spec: &str, dim: usize) -> Result<Vec<QVec>, CliError> {
    let mut out = Vec::new();
    for token in spec.split(',') {
        let token = token.trim();
        if token.is_empty() {
            continue;
        }
        if let Some(k) = token.strip_prefix('e') {
            if let Ok(idx) = k.parse::<usize>() {
                if idx == 0 || idx > dim {
                    return Err(CliError::Parse(format!(
                        "unit vector {token} out of range for dimension {dim}"
                    )));
                }
                out.push(QVec::unit(dim, idx - 1));
                continue;
            }
        }
        let coords: Result<Vec<_>, _> = token.split(':').map(parse_rat).collect();
        let coords =
            coords.map_err(|e| CliError::Parse(format!("bad translation {token:?}: {e}")))?;
        if coords.len() != dim {
            return Err(CliError::Parse(format!(
                "translation {token:?} has {} coordinates, expected {dim}",
                coords.len()
            )));
        }
        out.push(QVec::new(coords));
    }
    if out.is_empty() {
        return Err(CliError::Parse("no translations given".into()));
    }
    Ok(out)
}

/// Parse a comma-separated list of doubles for simulation start points.
pub fn parse_start(spec: &str) -> Result<Vec<f64>, CliError> {
    spec.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| CliError::Parse(format!("bad start coordinate {t:?}: {e}")))
        })
        .collect()
}
