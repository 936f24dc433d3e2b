//! Covariant harmonic oscillator toolkit.
//!
//! The crate is organised bottom-up:
//!
//! * [`special`]: Hermite polynomials, normalized Hermite functions and the
//!   quadrature rules every integral identity is checked against.
//! * [`little_group`]: real unimodular 2×2 matrices (boosted rotations,
//!   hyperbolic and triangular forms), trace classification and the massless
//!   contraction limit.
//! * [`oscillator`]: light-cone kinematics, rest and boosted oscillator wave
//!   functions, their rest-frame expansion and finite-difference Hamiltonians.
//! * [`observables`]: entropy, widths, form factors and the mass spectrum.
//! * [`io`]: text formats shared by the CLI (sweeps, config files, CSV).
//!
//! Units are natural oscillator units throughout: lengths are measured in the
//! ground-state width and the Hermite convention is the physicists' one
//! (weight `e^{-x²}`, leading coefficient `2^n`).

pub mod error;
pub mod io;
pub mod little_group;
pub mod observables;
pub mod oscillator;
pub mod special;

pub use error::{Error, Result};
pub use little_group::{EquiDiagonalForm, LittleGroupKind, Unimodular2};
pub use oscillator::{ExpansionSpectrum, QuarkPairCoords, Rapidity, SpacetimePoint, WaveGrid};
pub use special::{OscillatorIndex, Quadrature, QuadratureKind};
