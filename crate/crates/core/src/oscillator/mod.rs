//! Light-cone kinematics and covariant oscillator wave functions.
//!
//! Boosts act along `z` only:
//!
//! ```text
//! z' = cosh η · z − sinh η · t,    t' = cosh η · t − sinh η · z
//! ```
//!
//! With light-cone variables `u = (z + t)/√2`, `v = (z − t)/√2` this is the
//! squeeze `u' = e^{−η} u`, `v' = e^{η} v`. A state boosted by `η` is the rest
//! state evaluated at the primed coordinates.
//!
//! The eigenvalue label of the hadronic mass relation is taken to be
//! `λ = a + b + n` for solutions whose time oscillator sits in its ground
//! state; no other identification is made.

mod expansion;
mod grid;
mod hamiltonian;
mod wavefunction;

pub use expansion::{expansion_coefficients, series_reconstruct, ExpansionSpectrum};
pub use grid::{default_extent, GridDescriptor, WaveGrid, DEFAULT_GRID_COUNT};
pub use hamiltonian::{apply_h_minus, apply_h_plus, estimate_truncation_error};
pub use wavefunction::{psi_boosted, psi_cartesian_4d, psi_rest, squeezed_ground_state};
pub(crate) use wavefunction::psi_boosted_unchecked;

use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};

/// Largest `|η|` for which truncation bounds are certified.
pub const MAX_RAPIDITY: f64 = 10.0;

/// Boost parameter `η`, with `e^η = √((1+β)/(1−β))`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Rapidity(f64);

impl Rapidity {
    pub const ZERO: Rapidity = Rapidity(0.0);

    pub fn new(eta: f64) -> Result<Self> {
        if !eta.is_finite() || eta.abs() > MAX_RAPIDITY {
            return Err(Error::RapidityOutOfRange(eta));
        }
        Ok(Self(eta))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Rapidity {
    type Error = Error;

    fn try_from(eta: f64) -> Result<Self> {
        Self::new(eta)
    }
}

impl From<Rapidity> for f64 {
    fn from(eta: Rapidity) -> f64 {
        eta.0
    }
}

/// `η = ½ ln((1+β)/(1−β))`
pub fn rapidity_from_beta(beta: f64) -> Result<Rapidity> {
    if !beta.is_finite() || beta.abs() >= 1.0 {
        return Err(Error::InvalidVelocity(beta));
    }
    // atanh is not bit-odd on every libm
    Rapidity::new(beta.signum() * beta.abs().atanh())
}

/// Longitudinal and time separation `(z, t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpacetimePoint {
    pub z: f64,
    pub t: f64,
}

impl SpacetimePoint {
    pub fn new(z: f64, t: f64) -> Self {
        Self { z, t }
    }

    pub fn interval(&self) -> f64 {
        self.z * self.z - self.t * self.t
    }
}

pub fn boost_point(p: SpacetimePoint, eta: Rapidity) -> SpacetimePoint {
    let (sh, ch) = (eta.0.sinh(), eta.0.cosh());
    SpacetimePoint { z: ch * p.z - sh * p.t, t: ch * p.t - sh * p.z }
}

/// `(u, v) = ((z + t)/√2, (z − t)/√2)`
pub fn lightcone(p: SpacetimePoint) -> (f64, f64) {
    (FRAC_1_SQRT_2 * (p.z + p.t), FRAC_1_SQRT_2 * (p.z - p.t))
}

/// Inverse of [`lightcone`].
pub fn from_lightcone(u: f64, v: f64) -> SpacetimePoint {
    SpacetimePoint { z: FRAC_1_SQRT_2 * (u + v), t: FRAC_1_SQRT_2 * (u - v) }
}

/// Space-time coordinates of two constituents.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuarkPairCoords {
    pub xa: [f64; 4],
    pub xb: [f64; 4],
}

/// Hadronic (centre) and separation coordinates of a constituent pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HadronCoords {
    pub hadron: [f64; 4],
    pub separation: [f64; 4],
}

/// `X = (x_a + x_b)/2`, `x = (x_a − x_b)/(2√2)`
pub fn split_coordinates(q: &QuarkPairCoords) -> HadronCoords {
    let scale = 0.5 * FRAC_1_SQRT_2;
    let mut hadron = [0.0; 4];
    let mut separation = [0.0; 4];
    for mu in 0..4 {
        hadron[mu] = 0.5 * (q.xa[mu] + q.xb[mu]);
        separation[mu] = scale * (q.xa[mu] - q.xb[mu]);
    }
    HadronCoords { hadron, separation }
}

/// `(y₁, y₂) = ((x₁ + x₂)/√2, (x₁ − x₂)/√2)`; the map is its own inverse.
pub fn normal_coordinates(x1: f64, x2: f64) -> (f64, f64) {
    (FRAC_1_SQRT_2 * (x1 + x2), FRAC_1_SQRT_2 * (x1 - x2))
}
