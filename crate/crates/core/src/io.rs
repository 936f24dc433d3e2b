//! Text formats used by the command-line front end.
//!
//! * Floats are written in their shortest round-trip form.
//! * Sweeps are `start:stop:step` (endpoints inclusive within half a step) or
//!   a single number.
//! * Run configuration files hold `key = value` lines; `#` starts a comment
//!   and values may be quoted.

use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest number of points a sweep may expand to.
pub const MAX_SWEEP_POINTS: usize = 1_000_000;

/// Largest grid side accepted from a configuration (`count²` samples).
pub const MAX_GRID_COUNT: usize = 4001;

/// Shortest representation that parses back to the same `f64`.
pub fn format_f64(v: f64) -> String {
    let mut buf = ryu::Buffer::new();
    buf.format(v).to_owned()
}

/// Parses a sweep string into its sample values.
///
/// The point count is fixed first, `floor((stop − start)/step + ½) + 1`, and
/// values are `start + i·step`, so no error accumulates along the sweep.
pub fn parse_sweep(text: &str) -> Result<Vec<f64>> {
    let bad = |msg: String| Error::Parse { line: 1, msg };
    let parse = |s: &str| -> Result<f64> {
        let v: f64 = s.trim().parse().map_err(|_| bad(format!("invalid number {s:?} in sweep")))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(bad(format!("non-finite value {s:?} in sweep")))
        }
    };
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [single] => Ok(vec![parse(single)?]),
        [start, stop, step] => {
            let (start, stop, step) = (parse(start)?, parse(stop)?, parse(step)?);
            if step == 0.0 {
                return Err(bad("sweep step must be non-zero".into()));
            }
            let span = (stop - start) / step;
            if !span.is_finite() || span < -0.5 {
                return Err(bad(format!("sweep step {step} does not lead from {start} to {stop}")));
            }
            let count = (span + 0.5).floor() + 1.0;
            if count > MAX_SWEEP_POINTS as f64 {
                return Err(bad(format!("sweep expands to more than {MAX_SWEEP_POINTS} points")));
            }
            let count = count as usize;
            Ok((0..count).map(|i| start + i as f64 * step).collect())
        }
        _ => Err(bad(format!("sweep {text:?} must be a number or start:stop:step"))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::InvalidArgument(format!("unknown output format {other:?}"))),
        }
    }
}

/// Settings shared by all CLI commands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Half-width `L` of the sample grid; `None` picks `max(8, 6 e^{|η|})`.
    pub grid_extent: Option<f64>,
    pub grid_count: usize,
    pub truncation_tol: f64,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            grid_extent: None,
            grid_count: crate::oscillator::DEFAULT_GRID_COUNT,
            truncation_tol: 1e-10,
            output_format: OutputFormat::Csv,
            output_path: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if let Some(l) = self.grid_extent {
            if !(l.is_finite() && l > 0.0) {
                return Err(Error::InvalidArgument(format!("grid_extent {l} must be positive")));
            }
        }
        if self.grid_count < 3 || self.grid_count.is_multiple_of(2) || self.grid_count > MAX_GRID_COUNT {
            return Err(Error::InvalidArgument(format!(
                "grid_count {} must be odd and between 3 and {MAX_GRID_COUNT}",
                self.grid_count
            )));
        }
        if !(self.truncation_tol > 0.0 && self.truncation_tol < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "truncation_tol {} must lie in (0, 1)",
                self.truncation_tol
            )));
        }
        Ok(())
    }

    /// Parses a `key = value` file on top of the defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = RunConfig::default();
        let mut seen: Vec<String> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let err = |msg: String| Error::Parse { line, msg };
            let content = strip_comment(raw).map_err(|m| err(m.into()))?.trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| err(format!("expected key = value, got {content:?}")))?;
            let key = key.trim();
            let value = unquote(value.trim()).map_err(|m| err(m.into()))?;
            if seen.iter().any(|k| k == key) {
                return Err(err(format!("duplicate key {key:?}")));
            }
            seen.push(key.to_owned());
            let number = |v: &str| -> Result<f64> {
                v.parse::<f64>().map_err(|_| err(format!("{key}: invalid number {v:?}")))
            };
            match key {
                "grid_extent" => cfg.grid_extent = Some(number(value)?),
                "grid_count" => {
                    cfg.grid_count = value.parse().map_err(|_| err(format!("grid_count: invalid integer {value:?}")))?
                }
                "truncation_tol" => cfg.truncation_tol = number(value)?,
                "output_format" => cfg.output_format = value.parse().map_err(|e: Error| err(e.to_string()))?,
                "output_path" => {
                    if value.is_empty() {
                        return Err(err("output_path must not be empty".into()));
                    }
                    cfg.output_path = Some(PathBuf::from(value))
                }
                other => return Err(err(format!("unknown key {other:?}"))),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn strip_comment(line: &str) -> std::result::Result<&str, &'static str> {
    let mut in_quote = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => in_quote = !in_quote,
            '#' if !in_quote => return Ok(&line[..i]),
            _ => {}
        }
    }
    if in_quote {
        Err("unterminated quote")
    } else {
        Ok(line)
    }
}

fn unquote(value: &str) -> std::result::Result<&str, &'static str> {
    match value.strip_prefix('"') {
        Some(rest) => match rest.strip_suffix('"') {
            Some(inner) if !inner.contains('"') => Ok(inner),
            _ => Err("malformed quoted value"),
        },
        None if value.contains('"') => Err("stray quote in value"),
        None => Ok(value),
    }
}
