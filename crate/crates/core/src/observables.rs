//! Physical quantities derived from the covariant oscillator states.
//!
//! * Excitation probabilities `p_k = C_k²` of a boosted state and their
//!   entropy (nats). Leaving the time-separation variable unobserved turns the
//!   pure boosted state into this mixture.
//! * Widths of the boosted ground-state density: `var_z = var_t = cosh 2η / 2`.
//! * Breit-frame form factor `F = ⟨ψ_{−η}|ψ_{η}⟩ = 1/cosh 2η`, reported
//!   against `q² = 4 sinh² η` (unit hadron mass) so that `F = 1/(1 + q²/2)`.
//! * Static form factor of rest-frame ground states, `e^{−q²/4}`.
//! * Mass-squared levels `m₀² + λ + 1` with 3D oscillator degeneracies.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oscillator::{default_extent, psi_boosted_unchecked as psi_boosted_fast, ExpansionSpectrum, Rapidity, WaveGrid};
use crate::special::{integrate_1d, neumaier_sum, Quadrature};
use std::f64::consts::PI;

/// Largest `λ` accepted by [`mass_spectrum`].
pub const MAX_SPECTRUM_LAMBDA: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityDistribution {
    pub p: Vec<f64>,
    pub tail: f64,
}

impl ProbabilityDistribution {
    pub fn total(&self) -> f64 {
        neumaier_sum(self.p.iter().copied()) + self.tail
    }

    /// `−Σ p ln p` over the retained terms.
    pub fn entropy(&self) -> f64 {
        // `0.0 −` rather than unary minus keeps a certain outcome at +0
        0.0 - neumaier_sum(self.p.iter().filter(|&&p| p > 0.0).map(|&p| p * p.ln()))
    }
}

pub fn excitation_probabilities(n: usize, eta: Rapidity, tol: f64) -> Result<ProbabilityDistribution> {
    let spectrum = ExpansionSpectrum::to_tolerance(n, eta, tol)?;
    Ok(ProbabilityDistribution { p: spectrum.probabilities().collect(), tail: spectrum.tail_bound })
}

pub fn entropy(n: usize, eta: Rapidity, tol: f64) -> Result<f64> {
    Ok(excitation_probabilities(n, eta, tol)?.entropy())
}

/// `cosh²η ln cosh²η − sinh²η ln sinh²η`
pub fn ground_state_entropy_closed_form(eta: f64) -> f64 {
    let c2 = eta.cosh().powi(2);
    let s2 = eta.sinh().powi(2);
    let s_term = if s2 > 0.0 { s2 * s2.ln() } else { 0.0 };
    c2 * c2.ln() - s_term
}

/// `exp(S)`: effective number of occupied excitation levels.
pub fn effective_terms(n: usize, eta: Rapidity, tol: f64) -> Result<f64> {
    Ok(entropy(n, eta, tol)?.exp())
}

/// `(var_z, var_t)` of the boosted ground-state density.
pub fn boosted_widths(eta: Rapidity) -> (f64, f64) {
    let v = 0.5 * (2.0 * eta.get()).cosh();
    (v, v)
}

/// `(var_u, var_v)` of the boosted ground-state density; the product of the
/// standard deviations stays `1/2`.
pub fn lightcone_widths(eta: Rapidity) -> (f64, f64) {
    let e = eta.get();
    (0.5 * (2.0 * e).exp(), 0.5 * (-2.0 * e).exp())
}

/// Widths measured by trapezoid quadrature on the default grid for `η`.
pub fn boosted_widths_quadrature(eta: Rapidity, count: usize) -> Result<(f64, f64)> {
    let grid = WaveGrid::sample(default_extent(eta.get()), count, |p| psi_boosted_fast(0, eta, p))?;
    Ok(grid.variances())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FormFactorPoint {
    pub eta: f64,
    pub q_squared: f64,
    pub value: f64,
}

/// `q² = 4 sinh² η`
pub fn breit_q_squared(eta: f64) -> f64 {
    4.0 * eta.sinh().powi(2)
}

/// Rapidity whose Breit-frame momentum transfer is `q²`.
pub fn breit_rapidity(q_squared: f64) -> Result<Rapidity> {
    if q_squared.is_nan() || q_squared < 0.0 {
        return Err(Error::InvalidArgument(format!("q^2 = {q_squared} must be non-negative")));
    }
    Rapidity::new((0.5 * q_squared.sqrt()).asinh())
}

pub fn coherent_form_factor_closed_form(eta: f64) -> f64 {
    1.0 / (2.0 * eta).cosh()
}

/// Overlap `∫∫ ψ_{−η}⁰ ψ_{η}⁰ dz dt` by trapezoid quadrature.
///
/// The product decays like `exp(−cosh 2η (z² + t²))`, so the grid is scaled
/// to that width.
pub fn coherent_form_factor(eta: Rapidity) -> Result<FormFactorPoint> {
    const COUNT: usize = 401;
    let e = eta.get();
    let incoming = Rapidity::new(-e)?;
    let width = 1.0 / (2.0 * e).cosh().sqrt();
    let grid = WaveGrid::sample(7.0 * width, COUNT, |p| psi_boosted_fast(0, incoming, p) * psi_boosted_fast(0, eta, p))?;
    let h = grid.spacing();
    let weight = |i: usize| if i == 0 || i == COUNT - 1 { 0.5 } else { 1.0 };
    let rows = (0..COUNT).map(|i| weight(i) * neumaier_sum((0..COUNT).map(|j| weight(j) * grid.value(i, j))));
    let value = neumaier_sum(rows) * h * h;
    Ok(FormFactorPoint { eta: e, q_squared: breit_q_squared(e), value })
}

pub fn static_form_factor_closed_form(q: f64) -> f64 {
    (-0.25 * q * q).exp()
}

/// `∫ (1/√π) e^{−z²} cos(qz) dz` on the trapezoid rule `|z| ≤ 8`, step `1e-3`.
pub fn static_form_factor(q: f64) -> Result<f64> {
    if !q.is_finite() {
        return Err(Error::NonFinite { context: "momentum transfer", value: q });
    }
    let norm = 1.0 / PI.sqrt();
    integrate_1d(|z| norm * (-z * z).exp() * (q * z).cos(), Quadrature::default_trapezoid())
}

/// Least-squares slope of `ln F` against `ln q²` for the coherent form
/// factor, sampled at `points` log-spaced momentum transfers.
pub fn coherent_log_log_slope(q2_min: f64, q2_max: f64, points: usize) -> Result<f64> {
    if !(q2_min > 0.0 && q2_max > q2_min) || points < 2 {
        return Err(Error::InvalidArgument(format!(
            "slope needs 0 < q2_min < q2_max and two points (got {q2_min}, {q2_max}, {points})"
        )));
    }
    let (lo, hi) = (q2_min.ln(), q2_max.ln());
    let mut xs = Vec::with_capacity(points);
    let mut ys = Vec::with_capacity(points);
    for i in 0..points {
        let x = lo + (hi - lo) * i as f64 / (points - 1) as f64;
        let ff = coherent_form_factor(breit_rapidity(x.exp())?)?;
        xs.push(ff.q_squared.ln());
        ys.push(ff.value.ln());
    }
    let mx = xs.iter().sum::<f64>() / points as f64;
    let my = ys.iter().sum::<f64>() / points as f64;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MassSpectrumEntry {
    pub lambda: usize,
    pub mass_squared: f64,
    pub degeneracy: u64,
}

/// Number of triples `(a, b, n)` of non-negative integers with each sum
/// `0..=lambda_max`, counted by extending compositions one index at a time.
pub fn count_triples(lambda_max: usize) -> Vec<u64> {
    // one index: a single way to reach every total
    let mut counts = vec![1u64; lambda_max + 1];
    for _ in 1..3 {
        // adding a new index k ≥ 0: ways(s) = Σ_{k ≤ s} previous(s − k)
        let mut running = 0u64;
        for c in counts.iter_mut() {
            running += *c;
            *c = running;
        }
    }
    counts
}

/// `(λ + 1)(λ + 2)/2`
pub fn degeneracy_closed_form(lambda: usize) -> u64 {
    let l = lambda as u64;
    (l + 1) * (l + 2) / 2
}

pub fn mass_spectrum(lambda_max: usize, m0_squared: f64) -> Result<Vec<MassSpectrumEntry>> {
    if lambda_max > MAX_SPECTRUM_LAMBDA {
        return Err(Error::InvalidArgument(format!(
            "lambda_max {lambda_max} exceeds {MAX_SPECTRUM_LAMBDA}"
        )));
    }
    if !m0_squared.is_finite() {
        return Err(Error::NonFinite { context: "m0 squared", value: m0_squared });
    }
    Ok(count_triples(lambda_max)
        .into_iter()
        .enumerate()
        .map(|(lambda, degeneracy)| MassSpectrumEntry {
            lambda,
            mass_squared: m0_squared + (lambda + 1) as f64,
            degeneracy,
        })
        .collect())
}
