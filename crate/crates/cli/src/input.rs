//! State records read by `classify`, `invariants` and `transform`.

use std::fs;
use std::path::Path;

use clap::ValueEnum;
use gausssep::canonical::Mat4;
use gausssep::{Complex64, CovarianceMatrix, GaussianParams, Tolerances};
use serde::Deserialize;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// One record per line.
    Jsonl,
    /// A single document `{"states": [...]}`.
    Json,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamsInput {
    n1: f64,
    n2: f64,
    #[serde(default)]
    m1: [f64; 2],
    #[serde(default)]
    m2: [f64; 2],
    #[serde(default)]
    ms: [f64; 2],
    #[serde(default)]
    mc: [f64; 2],
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateInputRecord {
    #[serde(default)]
    id: Option<String>,
    #[serde(default)]
    params: Option<ParamsInput>,
    #[serde(default)]
    matrix: Option<[[[f64; 2]; 4]; 4]>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    states: Vec<serde_json::Value>,
}

#[derive(Debug, Clone)]
pub struct State {
    pub id: Option<String>,
    pub matrix: CovarianceMatrix,
    /// Present when the input was a parameter set or a matrix with the
    /// covariance layout.
    pub params: Option<GaussianParams>,
}

fn c(z: [f64; 2]) -> Complex64 {
    Complex64::new(z[0], z[1])
}

fn build(record: StateInputRecord, tol: &Tolerances) -> CliResult<State> {
    match (record.params, record.matrix) {
        (Some(p), None) => {
            let params =
                GaussianParams::from_parts(p.n1, p.n2, c(p.m1), c(p.m2), c(p.ms), c(p.mc))?;
            Ok(State {
                id: record.id,
                matrix: CovarianceMatrix::from_params(&params),
                params: Some(params),
            })
        }
        (None, Some(rows)) => {
            let m = Mat4::from_fn(|i, j| c(rows[i][j]));
            let matrix = CovarianceMatrix::from_matrix(m, tol.herm)?;
            Ok(State {
                id: record.id,
                params: matrix.to_params(tol.herm).ok(),
                matrix,
            })
        }
        _ => Err(CliError::Parse(
            "exactly one of \"params\" and \"matrix\" must be present".into(),
        )),
    }
}

fn parse_record(value: serde_json::Value, tol: &Tolerances) -> CliResult<State> {
    let record: StateInputRecord =
        serde_json::from_value(value).map_err(|e| CliError::Parse(e.to_string()))?;
    build(record, tol)
}

pub fn parse_states(text: &str, format: Format, tol: &Tolerances) -> CliResult<Vec<State>> {
    match format {
        Format::Jsonl => text
            .lines()
            .enumerate()
            .filter(|(_, line)| !line.trim().is_empty())
            .enumerate()
            .map(|(k, (line_no, line))| {
                serde_json::from_str(line)
                    .map_err(|e| CliError::Parse(e.to_string()))
                    .and_then(|value| parse_record(value, tol))
                    .map_err(|e| e.context(format!("record {k} (line {})", line_no + 1)))
            })
            .collect(),
        Format::Json => {
            let doc: Document =
                serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
            doc.states
                .into_iter()
                .enumerate()
                .map(|(k, value)| {
                    parse_record(value, tol).map_err(|e| e.context(format!("record {k}")))
                })
                .collect()
        }
    }
}

pub fn read_states(path: &Path, format: Format, tol: &Tolerances) -> CliResult<Vec<State>> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    parse_states(&text, format, tol).map_err(|e| e.context(path.display()))
}
