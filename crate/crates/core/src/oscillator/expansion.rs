//! Expansion of a boosted state in rest-frame product states.
//!
//! ```text
//! ψ_η^n(z, t) = Σ_k C_k χ_{n+k}(z) χ_k(t),
//! C_k = (1/cosh η)^{n+1} [(n+k)!/(n! k!)]^{1/2} (tanh η)^k
//! ```
//!
//! Every term is an eigenfunction of `H₋` with eigenvalue `n`, and the
//! squared coefficients form a negative-binomial distribution, so
//! `Σ C_k² = 1`.

use serde::{Deserialize, Serialize};

use super::grid::{axis, WaveGrid};
use super::{Rapidity, SpacetimePoint};
use crate::error::{Error, Result};
use crate::special::{check_index, chi_all_unchecked, ln_factorial, neumaier_sum, OscillatorIndex, MAX_INDEX};

/// Relative widening of the summed tail so that it bounds the exact tail
/// despite log-gamma rounding in the coefficients (about 1e-13 relative).
pub const TAIL_ROUNDING_ALLOWANCE: f64 = 1e-9;

/// Hard cap on the truncation order searched by [`ExpansionSpectrum::to_tolerance`].
pub const MAX_TRUNCATION: usize = 5_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionSpectrum {
    pub n: OscillatorIndex,
    pub eta: Rapidity,
    pub coefficients: Vec<f64>,
    /// Upper bound on `Σ_{k>K} C_k²`, summed directly over the omitted terms.
    pub tail_bound: f64,
}

/// Coefficient `C_k`, evaluated in log space.
fn coefficient(n: usize, k: usize, ln_prefactor: f64, ln_tanh: f64, tanh_negative: bool) -> f64 {
    let ln_binom = 0.5 * (ln_factorial(n + k) - ln_factorial(n) - ln_factorial(k));
    let magnitude = (ln_prefactor + ln_binom + k as f64 * ln_tanh).exp();
    if tanh_negative && k % 2 == 1 {
        -magnitude
    } else {
        magnitude
    }
}

struct CoefficientStream {
    n: usize,
    k: usize,
    ln_prefactor: f64,
    ln_tanh: f64,
    tanh_negative: bool,
    at_rest: bool,
}

impl CoefficientStream {
    fn new(n: usize, eta: Rapidity) -> Self {
        let e = eta.get();
        let th = e.tanh();
        Self {
            n,
            k: 0,
            ln_prefactor: -((n + 1) as f64) * e.cosh().ln(),
            ln_tanh: th.abs().ln(),
            tanh_negative: th < 0.0,
            at_rest: th == 0.0,
        }
    }
}

impl Iterator for CoefficientStream {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let k = self.k;
        self.k += 1;
        if self.at_rest {
            return Some(if k == 0 { 1.0 } else { 0.0 });
        }
        Some(coefficient(self.n, k, self.ln_prefactor, self.ln_tanh, self.tanh_negative))
    }
}

/// Squared coefficients from `start` onwards until the geometric remainder
/// is negligible against `floor`, plus that remainder. Returns `None` when the
/// series cannot be closed within [`MAX_TRUNCATION`] terms.
fn omitted_probabilities(n: usize, eta: Rapidity, start: usize, floor: f64) -> Option<(Vec<f64>, f64)> {
    let t = eta.get().tanh().powi(2);
    if t == 0.0 {
        return Some((Vec::new(), 0.0));
    }
    let mut stream = CoefficientStream::new(n, eta);
    stream.k = start;
    let mut terms = Vec::new();
    let mut partial = 0.0;
    for c in stream {
        let k = start + terms.len();
        let p = c * c;
        terms.push(p);
        partial += p;
        // p_{j+1}/p_j = T (n+j+1)/(j+1) decreases towards T, so from here the
        // rest is bounded by a geometric series with the current ratio.
        let ratio = t * (n + k + 1) as f64 / (k + 1) as f64;
        if ratio < 1.0 {
            let remainder = p * ratio / (1.0 - ratio);
            if remainder <= floor.max(1e-17 * partial) {
                return Some((terms, remainder));
            }
        }
        if k > MAX_TRUNCATION {
            return None;
        }
    }
    unreachable!("coefficient stream is infinite")
}

/// `Σ_{k>K} C_k²`, summed from the small end and widened by
/// [`TAIL_ROUNDING_ALLOWANCE`].
fn tail_after(n: usize, eta: Rapidity, truncation: usize, kept: &[f64]) -> f64 {
    let tail = match omitted_probabilities(n, eta, truncation + 1, 0.0) {
        Some((terms, remainder)) => terms.iter().rev().fold(remainder, |acc, p| acc + p),
        None => (1.0 - neumaier_sum(kept.iter().map(|c| c * c))).max(0.0),
    };
    tail * (1.0 + TAIL_ROUNDING_ALLOWANCE)
}

/// Coefficients `C_0..=C_K` of the boosted state `n`.
pub fn expansion_coefficients(n: usize, eta: Rapidity, truncation: usize) -> Result<ExpansionSpectrum> {
    let index = OscillatorIndex::new(n)?;
    let coefficients: Vec<f64> = CoefficientStream::new(n, eta).take(truncation + 1).collect();
    let tail_bound = tail_after(n, eta, truncation, &coefficients);
    Ok(ExpansionSpectrum { n: index, eta, coefficients, tail_bound })
}

/// `Σ_{k≤K} C_k χ_{n+k}(z) χ_k(t)`
pub fn series_reconstruct(n: usize, eta: Rapidity, truncation: usize, p: SpacetimePoint) -> Result<f64> {
    expansion_coefficients(n, eta, truncation)?.evaluate(p)
}

impl ExpansionSpectrum {
    /// Smallest truncation whose tail bound is at most `tol`.
    pub fn to_tolerance(n: usize, eta: Rapidity, tol: f64) -> Result<Self> {
        if !(tol > 0.0 && tol < 1.0) {
            return Err(Error::InvalidArgument(format!("truncation tolerance {tol} must lie in (0, 1)")));
        }
        OscillatorIndex::new(n)?;
        let (terms, remainder) = omitted_probabilities(n, eta, 0, 1e-6 * tol)
            .ok_or(Error::TruncationUnreachable { tol, tail: f64::NAN, k: MAX_TRUNCATION })?;
        // tails[k] = Σ_{j>k} p_j
        let mut tails = vec![0.0; terms.len()];
        let mut acc = remainder;
        for k in (0..terms.len()).rev() {
            tails[k] = acc;
            acc += terms[k];
        }
        let truncation = tails
            .iter()
            .position(|&tail| tail * (1.0 + TAIL_ROUNDING_ALLOWANCE) <= tol)
            .unwrap_or(terms.len().saturating_sub(1));
        expansion_coefficients(n, eta, truncation)
    }

    /// Truncation order `K`.
    pub fn truncation(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn probabilities(&self) -> impl Iterator<Item = f64> + '_ {
        self.coefficients.iter().map(|c| c * c)
    }

    fn check_evaluable(&self) -> Result<()> {
        check_index(self.n.get() + self.truncation(), MAX_INDEX)
    }

    pub fn evaluate(&self, p: SpacetimePoint) -> Result<f64> {
        self.check_evaluable()?;
        let n = self.n.get();
        let k_max = self.truncation();
        let mut space = vec![0.0; n + k_max + 1];
        let mut time = vec![0.0; k_max + 1];
        chi_all_unchecked(p.z, &mut space);
        chi_all_unchecked(p.t, &mut time);
        Ok(neumaier_sum(
            self.coefficients.iter().enumerate().map(|(k, c)| c * space[n + k] * time[k]),
        ))
    }

    /// Samples the truncated series on a square grid, sharing the Hermite
    /// function tables between rows and columns.
    pub fn sample_grid(&self, extent: f64, count: usize) -> Result<WaveGrid> {
        self.check_evaluable()?;
        let n = self.n.get();
        let width = n + self.truncation() + 1;
        let xs = axis(extent, count)?;
        let mut table = vec![0.0; count * width];
        for (row, &x) in table.chunks_mut(width).zip(&xs) {
            chi_all_unchecked(x, row);
        }
        let weighted: Vec<f64> = (0..count)
            .flat_map(|i| {
                let row = &table[i * width..(i + 1) * width];
                self.coefficients.iter().enumerate().map(move |(k, c)| c * row[n + k])
            })
            .collect();
        let terms = self.coefficients.len();
        WaveGrid::from_index_fn(extent, count, |i, j| {
            let a = &weighted[i * terms..(i + 1) * terms];
            let b = &table[j * width..j * width + terms];
            a.iter().zip(b).map(|(x, y)| x * y).sum()
        })
    }
}
