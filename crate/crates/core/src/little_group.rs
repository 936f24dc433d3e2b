//! Real 2×2 unimodular matrices and the three equi-diagonal little-group forms.
//!
//! Rotations use the unimodular convention `[[cos θ, −sin θ], [sin θ, cos θ]]`
//! and boosts are `diag(e^{−η/2}, e^{η/2})`. Conjugating a rotation by a boost
//! gives
//!
//! ```text
//! [[cos θ, −e^{−η} sin θ], [e^{η} sin θ, cos θ]]
//! ```
//!
//! which contracts to the triangular form `[[1, 0], [γ, 1]]` as `η → ∞` when
//! `sin θ = γ e^{−η}`.

use std::f64::consts::FRAC_PI_4;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Entry overflow guard for boosts.
pub const MAX_BOOST: f64 = 50.0;

/// Tolerance on `|det − 1|` accepted by [`Unimodular2::new`].
pub const DET_TOLERANCE: f64 = 1e-12;

/// Default band half-width for [`classify`].
pub const DEFAULT_CLASSIFY_TOL: f64 = 1e-9;

/// Real 2×2 matrix `[[a, b], [c, d]]` with unit determinant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix")]
pub struct Unimodular2 {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

#[derive(Deserialize)]
struct RawMatrix {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl TryFrom<RawMatrix> for Unimodular2 {
    type Error = Error;

    fn try_from(m: RawMatrix) -> Result<Self> {
        Unimodular2::new(m.a, m.b, m.c, m.d)
    }
}

impl Unimodular2 {
    pub const IDENTITY: Self = Self { a: 1.0, b: 0.0, c: 0.0, d: 1.0 };

    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        for v in [a, b, c, d] {
            if !v.is_finite() {
                return Err(Error::NonFinite { context: "matrix entry", value: v });
            }
        }
        let m = Self { a, b, c, d };
        let det = m.det();
        if (det - 1.0).abs() >= DET_TOLERANCE || !det.is_finite() {
            return Err(Error::NotUnimodular { det });
        }
        Ok(m)
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn c(&self) -> f64 {
        self.c
    }
    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn entries(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    /// Exact inverse `[[d, −b], [−c, a]]`.
    pub fn inverse(&self) -> Self {
        Self { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// Largest absolute entrywise difference.
    pub fn max_distance(&self, other: &Self) -> f64 {
        self.entries()
            .iter()
            .zip(other.entries())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }

    /// `g · self · g⁻¹`
    pub fn conjugate_by(&self, g: &Self) -> Self {
        *g * *self * g.inverse()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain struct serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

impl Mul for Unimodular2 {
    type Output = Unimodular2;

    fn mul(self, r: Unimodular2) -> Unimodular2 {
        Unimodular2 {
            a: self.a * r.a + self.b * r.c,
            b: self.a * r.b + self.b * r.d,
            c: self.c * r.a + self.d * r.c,
            d: self.c * r.b + self.d * r.d,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LittleGroupKind {
    /// `|tr| < 2`: conjugate to a boosted rotation.
    MassiveLike,
    /// `|tr| = 2`: conjugate to the triangular form.
    MasslessLike,
    /// `|tr| > 2`: conjugate to a boosted hyperbolic form.
    ImaginaryMassLike,
}

impl std::fmt::Display for LittleGroupKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            LittleGroupKind::MassiveLike => "MassiveLike",
            LittleGroupKind::MasslessLike => "MasslessLike",
            LittleGroupKind::ImaginaryMassLike => "ImaginaryMassLike",
        };
        f.write_str(s)
    }
}

/// Result of [`equi_diagonalize`]: `matrix = rotation(angle) · m · rotation(−angle)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquiDiagonalForm {
    pub angle: f64,
    pub matrix: Unimodular2,
}

fn check_boost(eta: f64) -> Result<()> {
    if !eta.is_finite() || eta.abs() > MAX_BOOST {
        Err(Error::BoostOutOfRange(eta))
    } else {
        Ok(())
    }
}

pub fn rotation(theta: f64) -> Result<Unimodular2> {
    if !theta.is_finite() {
        return Err(Error::NonFinite { context: "rotation angle", value: theta });
    }
    let (s, c) = theta.sin_cos();
    Ok(Unimodular2 { a: c, b: -s, c: s, d: c })
}

/// `diag(e^{−η/2}, e^{η/2})`
pub fn boost(eta: f64) -> Result<Unimodular2> {
    check_boost(eta)?;
    Ok(Unimodular2 { a: (-0.5 * eta).exp(), b: 0.0, c: 0.0, d: (0.5 * eta).exp() })
}

/// `boost(η) · rotation(θ) · boost(−η)`, computed as the matrix product.
pub fn boosted_rotation(theta: f64, eta: f64) -> Result<Unimodular2> {
    Ok(boost(eta)? * rotation(theta)? * boost(-eta)?)
}

/// `[[cosh λ, e^{−η} sinh λ], [e^{η} sinh λ, cosh λ]]`
pub fn boosted_hyperbolic(lambda: f64, eta: f64) -> Result<Unimodular2> {
    check_boost(eta)?;
    if !lambda.is_finite() {
        return Err(Error::NonFinite { context: "hyperbolic parameter", value: lambda });
    }
    let (ch, sh) = (lambda.cosh(), lambda.sinh());
    if !ch.is_finite() {
        return Err(Error::NonFinite { context: "cosh of hyperbolic parameter", value: ch });
    }
    Ok(Unimodular2 { a: ch, b: (-eta).exp() * sh, c: eta.exp() * sh, d: ch })
}

/// `[[1, 0], [γ, 1]]`
pub fn triangular(gamma: f64) -> Result<Unimodular2> {
    if !gamma.is_finite() {
        return Err(Error::NonFinite { context: "triangular parameter", value: gamma });
    }
    Ok(Unimodular2 { a: 1.0, b: 0.0, c: gamma, d: 1.0 })
}

pub fn classify(m: &Unimodular2, tol: f64) -> LittleGroupKind {
    let tr = m.trace().abs();
    if tr < 2.0 - tol {
        LittleGroupKind::MassiveLike
    } else if tr > 2.0 + tol {
        LittleGroupKind::ImaginaryMassLike
    } else {
        LittleGroupKind::MasslessLike
    }
}

/// Rotates `m` to a form with equal diagonal entries.
///
/// The diagonal difference after conjugation by `rotation(α)` is
/// `(a − d) cos 2α − (b + c) sin 2α`, so `tan 2α = (a − d)/(b + c)` with the
/// branch `α ∈ (−π/4, π/4]`.
pub fn equi_diagonalize(m: &Unimodular2) -> EquiDiagonalForm {
    let diff = m.a - m.d;
    let sum = m.b + m.c;
    let scale = m.entries().iter().fold(1.0_f64, |acc, v| acc.max(v.abs()));
    let angle = if diff.abs() <= 4.0 * f64::EPSILON * scale {
        0.0
    } else if sum == 0.0 {
        FRAC_PI_4
    } else {
        let alpha = 0.5 * (diff / sum).atan();
        // atan lands in (−π/2, π/2); −π/4 itself is folded onto +π/4.
        if alpha <= -FRAC_PI_4 { FRAC_PI_4 } else { alpha }
    };
    let r = rotation(angle).expect("finite angle");
    let mut matrix = m.conjugate_by(&r);
    // Rounding leaves |a − d| at the ulp level; the form is defined by a = d.
    let mean = 0.5 * (matrix.a + matrix.d);
    matrix.a = mean;
    matrix.d = mean;
    EquiDiagonalForm { angle, matrix }
}

/// Boosted rotation with `θ(η) = arcsin(γ e^{−η})`, which tends to
/// `triangular(γ)` as `η` grows.
pub fn contraction_sequence(gamma: f64, eta: f64) -> Result<Unimodular2> {
    check_boost(eta)?;
    if !gamma.is_finite() {
        return Err(Error::NonFinite { context: "contraction parameter", value: gamma });
    }
    let s = gamma * (-eta).exp();
    if s.abs() > 1.0 {
        return Err(Error::ContractionUndefined(s.abs()));
    }
    let theta = s.asin();
    let c = theta.cos();
    // Off-diagonals are written out so that e^{η} sin θ is γ to rounding.
    Ok(Unimodular2 { a: c, b: -(-eta).exp() * s, c: eta.exp() * s, d: c })
}
