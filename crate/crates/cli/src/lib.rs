//! Record types written by the `covox` binary, and the readers that load them
//! back.
//!
//! Tables go out either as CSV (header row, `\n` endings, shortest
//! round-trip floats) or as a pretty-printed JSON array of row objects.

use std::path::Path;

use covox::io::format_f64;
use covox::little_group::LittleGroupKind;
use covox::oscillator::GridDescriptor;
use covox::Unimodular2;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

/// A row of an output table.
pub trait Record: Serialize {
    const HEADER: &'static str;

    fn fields(&self) -> Vec<String>;
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionRow {
    pub k: usize,
    pub coefficient: f64,
    pub probability: f64,
    pub cumulative: f64,
}

impl Record for ExpansionRow {
    const HEADER: &'static str = "k,coefficient,probability,cumulative";

    fn fields(&self) -> Vec<String> {
        vec![
            self.k.to_string(),
            format_f64(self.coefficient),
            format_f64(self.probability),
            format_f64(self.cumulative),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyRow {
    pub n: usize,
    pub eta: f64,
    pub entropy: f64,
    pub effective_terms: f64,
    /// Probability left out of the sum.
    pub tail: f64,
}

impl Record for EntropyRow {
    const HEADER: &'static str = "n,eta,entropy,effective_terms,tail";

    fn fields(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            format_f64(self.eta),
            format_f64(self.entropy),
            format_f64(self.effective_terms),
            format_f64(self.tail),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FormFactorRow {
    pub eta: f64,
    pub q_squared: f64,
    pub coherent: f64,
    #[serde(rename = "static")]
    pub static_value: f64,
}

impl Record for FormFactorRow {
    const HEADER: &'static str = "eta,q_squared,coherent,static";

    fn fields(&self) -> Vec<String> {
        vec![
            format_f64(self.eta),
            format_f64(self.q_squared),
            format_f64(self.coherent),
            format_f64(self.static_value),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub lambda: usize,
    pub mass_squared: f64,
    pub degeneracy: u64,
}

impl Record for SpectrumRow {
    const HEADER: &'static str = "lambda,mass_squared,degeneracy";

    fn fields(&self) -> Vec<String> {
        vec![self.lambda.to_string(), format_f64(self.mass_squared), self.degeneracy.to_string()]
    }
}

/// JSON written next to a wave-function grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WavefunctionSidecar {
    pub n: usize,
    pub eta: f64,
    pub extent: f64,
    pub count: usize,
    pub norm: f64,
    pub var_z: f64,
    pub var_t: f64,
    /// File name of the grid, relative to the sidecar.
    pub grid: String,
}

impl WavefunctionSidecar {
    pub fn descriptor(&self) -> GridDescriptor {
        GridDescriptor { extent: self.extent, count: self.count, n: self.n, eta: self.eta }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub matrix: Unimodular2,
    pub kind: LittleGroupKind,
    pub trace: f64,
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquiDiagonalReport {
    pub input: Unimodular2,
    pub angle: f64,
    pub matrix: Unimodular2,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContractionReport {
    pub gamma: f64,
    pub eta: f64,
    pub theta: f64,
    pub matrix: Unimodular2,
    /// Largest entry difference from the triangular limit.
    pub distance: f64,
}

pub fn render_csv<R: Record>(rows: &[R]) -> String {
    let mut out = String::with_capacity(32 * (rows.len() + 1));
    out.push_str(R::HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.fields().join(","));
        out.push('\n');
    }
    out
}

pub fn render_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("records serialize");
    text.push('\n');
    text
}

pub fn read_json<T: DeserializeOwned>(text: &str) -> covox::Result<T> {
    Ok(serde_json::from_str(text)?)
}

pub fn read_json_file<T: DeserializeOwned>(path: &Path) -> covox::Result<T> {
    let text = std::fs::read_to_string(path).map_err(|source| covox::Error::Io { path: path.to_owned(), source })?;
    read_json(&text)
}

/// Reads a matrix given either as `{"a":…,"b":…,"c":…,"d":…}` or as any
/// object carrying one under `"matrix"`, which covers every little-group
/// report.
pub fn read_matrix(text: &str) -> covox::Result<Unimodular2> {
    #[derive(Deserialize)]
    struct Wrapped {
        matrix: Unimodular2,
    }
    match Unimodular2::from_json(text) {
        Ok(m) => Ok(m),
        Err(bare) => match serde_json::from_str::<Wrapped>(text) {
            Ok(w) => Ok(w.matrix),
            Err(_) => Err(bare),
        },
    }
}
