//! Square sample grids over `(z, t) ∈ [−L, L]²`.
//!
//! Samples are stored row-major with `z` as the slow index: sample
//! `i * count + j` sits at `(z_i, t_j)`. Grid integrals use the 2D trapezoid
//! rule with fixed-order compensated summation, so results do not depend on
//! how the sampling was scheduled across threads.

use std::io::{BufRead, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::SpacetimePoint;
use crate::error::{Error, Result};
use crate::io::format_f64;
use crate::special::neumaier_sum;

pub const DEFAULT_GRID_COUNT: usize = 801;

/// `L = max(8, 6 e^{|η|})`
pub fn default_extent(eta: f64) -> f64 {
    (6.0 * eta.abs().exp()).max(8.0)
}

pub(crate) fn axis(extent: f64, count: usize) -> Result<Vec<f64>> {
    if !(extent.is_finite() && extent > 0.0) {
        return Err(Error::InvalidArgument(format!("grid extent {extent} must be positive and finite")));
    }
    if count < 2 {
        return Err(Error::InvalidArgument(format!("grid count {count} must be at least 2")));
    }
    let h = 2.0 * extent / (count - 1) as f64;
    let centre = 0.5 * (count - 1) as f64;
    Ok((0..count).map(|i| (i as f64 - centre) * h).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct WaveGrid {
    extent: f64,
    count: usize,
    samples: Vec<f64>,
    /// Width of the boundary ring whose samples carry no information (set to
    /// zero), e.g. after a finite-difference stencil.
    margin: usize,
}

/// JSON descriptor accompanying a grid file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridDescriptor {
    pub extent: f64,
    pub count: usize,
    pub n: usize,
    pub eta: f64,
}

impl WaveGrid {
    pub fn from_samples(extent: f64, count: usize, samples: Vec<f64>) -> Result<Self> {
        axis(extent, count)?;
        if samples.len() != count * count {
            return Err(Error::GridMismatch(format!(
                "{} samples for a {count}x{count} grid",
                samples.len()
            )));
        }
        if let Some((i, v)) = samples.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFiniteSample { index: i, x: *v });
        }
        Ok(Self { extent, count, samples, margin: 0 })
    }

    pub(crate) fn from_index_fn<F>(extent: f64, count: usize, f: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> f64 + Sync,
    {
        axis(extent, count)?;
        let mut samples = vec![0.0; count * count];
        samples.par_chunks_mut(count).enumerate().for_each(|(i, row)| {
            for (j, s) in row.iter_mut().enumerate() {
                *s = f(i, j);
            }
        });
        Self::from_samples(extent, count, samples)
    }

    /// Evaluates `f` at every grid point; rows are filled in parallel.
    pub fn sample<F>(extent: f64, count: usize, f: F) -> Result<Self>
    where
        F: Fn(SpacetimePoint) -> f64 + Sync,
    {
        let xs = axis(extent, count)?;
        Self::from_index_fn(extent, count, |i, j| f(SpacetimePoint::new(xs[i], xs[j])))
    }

    pub(crate) fn with_margin(extent: f64, count: usize, samples: Vec<f64>, margin: usize) -> Self {
        Self { extent, count, samples, margin }
    }

    pub fn extent(&self) -> f64 {
        self.extent
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn margin(&self) -> usize {
        self.margin
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.extent / (self.count - 1) as f64
    }

    pub fn axis(&self) -> Vec<f64> {
        axis(self.extent, self.count).expect("validated at construction")
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.samples[i * self.count + j]
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self { samples: self.samples.iter().map(|v| v * factor).collect(), ..self.clone() }
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.count != other.count || self.extent != other.extent {
            return Err(Error::GridMismatch(format!(
                "({}, {}) vs ({}, {})",
                self.extent, self.count, other.extent, other.count
            )));
        }
        Ok(())
    }

    fn trapezoid_weight(&self, i: usize) -> f64 {
        if i == 0 || i == self.count - 1 {
            0.5
        } else {
            1.0
        }
    }

    /// Trapezoid-rule `∫∫ f(z_i, t_j, ψ_ij) dz dt`.
    fn integrate<F: Fn(usize, usize) -> f64 + Sync>(&self, f: F) -> f64 {
        let rows: Vec<f64> = (0..self.count)
            .into_par_iter()
            .map(|i| neumaier_sum((0..self.count).map(|j| self.trapezoid_weight(j) * f(i, j))) * self.trapezoid_weight(i))
            .collect();
        let h = self.spacing();
        neumaier_sum(rows) * h * h
    }

    /// Discrete `L²` norm.
    pub fn norm_l2(&self) -> f64 {
        self.integrate(|i, j| self.value(i, j).powi(2)).sqrt()
    }

    pub fn inner(&self, other: &Self) -> Result<f64> {
        self.check_same_shape(other)?;
        Ok(self.integrate(|i, j| self.value(i, j) * other.value(i, j)))
    }

    pub fn l2_distance(&self, other: &Self) -> Result<f64> {
        self.check_same_shape(other)?;
        Ok(self.integrate(|i, j| (self.value(i, j) - other.value(i, j)).powi(2)).sqrt())
    }

    /// Variances of `z` and `t` under the density `|ψ|²/‖ψ‖²`.
    pub fn variances(&self) -> (f64, f64) {
        let xs = self.axis();
        let mass = self.integrate(|i, j| self.value(i, j).powi(2));
        let mean_z = self.integrate(|i, j| xs[i] * self.value(i, j).powi(2)) / mass;
        let mean_t = self.integrate(|i, j| xs[j] * self.value(i, j).powi(2)) / mass;
        let var_z = self.integrate(|i, j| (xs[i] - mean_z).powi(2) * self.value(i, j).powi(2)) / mass;
        let var_t = self.integrate(|i, j| (xs[j] - mean_t).powi(2) * self.value(i, j).powi(2)) / mass;
        (var_z, var_t)
    }

    /// Largest `|self − other|` over points that are valid in both grids.
    pub fn interior_max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same_shape(other)?;
        let m = self.margin.max(other.margin);
        let mut worst = 0.0_f64;
        for i in m..self.count - m {
            for j in m..self.count - m {
                worst = worst.max((self.value(i, j) - other.value(i, j)).abs());
            }
        }
        Ok(worst)
    }

    /// Writes `z,t,value` rows in storage order with shortest round-trip floats.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let xs = self.axis();
        out.write_all(b"z,t,value\n")?;
        let mut line = String::with_capacity(64);
        for (i, z) in xs.iter().enumerate() {
            for (j, t) in xs.iter().enumerate() {
                line.clear();
                line.push_str(&format_f64(*z));
                line.push(',');
                line.push_str(&format_f64(*t));
                line.push(',');
                line.push_str(&format_f64(self.value(i, j)));
                line.push('\n');
                out.write_all(line.as_bytes())?;
            }
        }
        Ok(())
    }

    /// Reads the format produced by [`WaveGrid::write_csv`], checking that the
    /// coordinates form a uniform square grid in storage order.
    pub fn read_csv<R: BufRead>(input: R) -> Result<Self> {
        let mut lines = input.lines().enumerate();
        let header = match lines.next() {
            Some((_, line)) => line.map_err(|e| Error::Parse { line: 1, msg: e.to_string() })?,
            None => return Err(Error::Parse { line: 1, msg: "empty grid file".into() }),
        };
        if header.trim_end_matches('\r') != "z,t,value" {
            return Err(Error::Parse { line: 1, msg: format!("unexpected header {header:?}") });
        }
        let mut rows: Vec<[f64; 3]> = Vec::new();
        for (idx, line) in lines {
            let lineno = idx + 1;
            let line = line.map_err(|e| Error::Parse { line: lineno, msg: e.to_string() })?;
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split(',');
            let mut row = [0.0; 3];
            for slot in row.iter_mut() {
                let field = fields
                    .next()
                    .ok_or_else(|| Error::Parse { line: lineno, msg: "expected three fields".into() })?;
                *slot = field
                    .trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Parse { line: lineno, msg: format!("{field:?}: {e}") })?;
                if !slot.is_finite() {
                    return Err(Error::Parse { line: lineno, msg: "non-finite value".into() });
                }
            }
            if fields.next().is_some() {
                return Err(Error::Parse { line: lineno, msg: "expected three fields".into() });
            }
            rows.push(row);
        }
        let count = (rows.len() as f64).sqrt().round() as usize;
        if count < 2 || count * count != rows.len() {
            return Err(Error::Parse { line: 0, msg: format!("{} rows do not form a square grid", rows.len()) });
        }
        let extent = -rows[0][0];
        let xs = axis(extent, count).map_err(|e| Error::Parse { line: 2, msg: e.to_string() })?;
        let tol = 1e-9 * extent;
        for (r, row) in rows.iter().enumerate() {
            let (i, j) = (r / count, r % count);
            if (row[0] - xs[i]).abs() > tol || (row[1] - xs[j]).abs() > tol {
                return Err(Error::Parse {
                    line: r + 2,
                    msg: format!("coordinates ({}, {}) off the uniform grid", row[0], row[1]),
                });
            }
        }
        Self::from_samples(extent, count, rows.iter().map(|r| r[2]).collect())
    }
}
