//! Hermite polynomials, normalized Hermite functions and quadrature rules.
//!
//! The physicists' convention is used everywhere: `H_n` has leading
//! coefficient `2^n` and is orthogonal under the weight `e^{-x²}`. The
//! normalized oscillator eigenfunctions are
//!
//! ```text
//! χ_n(x) = [1 / (√π 2^n n!)]^{1/2} H_n(x) e^{-x²/2}
//! ```
//!
//! Raw polynomial values grow like `(2x)^n`, so [`hermite`] is capped at
//! [`MAX_POLYNOMIAL_INDEX`]. The normalized functions are generated by their
//! own three-term recurrence, which stays in range for much larger `n`; that
//! path is capped at [`MAX_INDEX`] and checked for orthonormality up to it.

use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `n` accepted by [`hermite`] and [`chi_from_polynomial`].
pub const MAX_POLYNOMIAL_INDEX: usize = 32;

/// Largest `n` accepted by the normalized Hermite-function routines.
pub const MAX_INDEX: usize = 320;

/// Node count of the default Gauss–Hermite rule.
pub const DEFAULT_HERMITE_NODES: usize = 128;

/// Excitation number of a one-dimensional oscillator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct OscillatorIndex(usize);

impl OscillatorIndex {
    pub fn new(n: usize) -> Result<Self> {
        check_index(n, MAX_INDEX)?;
        Ok(Self(n))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

impl TryFrom<usize> for OscillatorIndex {
    type Error = Error;

    fn try_from(n: usize) -> Result<Self> {
        Self::new(n)
    }
}

impl From<OscillatorIndex> for usize {
    fn from(n: OscillatorIndex) -> usize {
        n.0
    }
}

impl std::fmt::Display for OscillatorIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

pub(crate) fn check_index(n: usize, max: usize) -> Result<()> {
    if n > max {
        Err(Error::IndexOutOfRange { index: n, max })
    } else {
        Ok(())
    }
}

fn check_finite(context: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite { context, value })
    }
}

/// Hermite polynomial `H_n(x)` by the recurrence `H_{n+1} = 2x H_n − 2n H_{n−1}`.
pub fn hermite(n: usize, x: f64) -> Result<f64> {
    check_index(n, MAX_POLYNOMIAL_INDEX)?;
    check_finite("hermite argument", x)?;
    let mut prev = 1.0;
    if n == 0 {
        return Ok(prev);
    }
    let mut curr = 2.0 * x;
    for k in 1..n {
        let next = 2.0 * x * curr - 2.0 * k as f64 * prev;
        prev = curr;
        curr = next;
    }
    Ok(curr)
}

/// `ln n!` through the log-gamma function.
pub fn ln_factorial(n: usize) -> f64 {
    libm::lgamma(n as f64 + 1.0)
}

/// Logarithm of the normalization `[1/(√π 2^n n!)]^{1/2}` of `χ_n`.
pub fn ln_chi_norm(n: usize) -> f64 {
    -0.5 * (0.5 * PI.ln() + n as f64 * std::f64::consts::LN_2 + ln_factorial(n))
}

/// `χ_n(x)` assembled literally from the normalization constant and the raw
/// polynomial. Limited to [`MAX_POLYNOMIAL_INDEX`]; used as a cross-check of
/// the recurrence in [`chi`].
pub fn chi_from_polynomial(n: usize, x: f64) -> Result<f64> {
    let h = hermite(n, x)?;
    Ok(ln_chi_norm(n).exp() * h * (-0.5 * x * x).exp())
}

/// Normalized oscillator eigenfunction `χ_n(x)`.
pub fn chi(n: usize, x: f64) -> Result<f64> {
    check_index(n, MAX_INDEX)?;
    check_finite("chi argument", x)?;
    Ok(chi_unchecked(n, x))
}

/// `χ_n(x) e^{x²/2}`: the Hermite function with the Gaussian divided out,
/// which is what a Gauss–Hermite rule expects for products `χ_n χ_m`.
pub fn hermite_normalized(n: usize, x: f64) -> Result<f64> {
    check_index(n, MAX_INDEX)?;
    check_finite("hermite_normalized argument", x)?;
    Ok(recurrence_last(n, x, PI.powf(-0.25)))
}

/// Fills `out[k] = χ_k(x)` for `k = 0..out.len()`.
pub fn chi_all(x: f64, out: &mut [f64]) -> Result<()> {
    if let Some(last) = out.len().checked_sub(1) {
        check_index(last, MAX_INDEX)?;
    }
    check_finite("chi argument", x)?;
    chi_all_unchecked(x, out);
    Ok(())
}

pub(crate) fn chi_unchecked(n: usize, x: f64) -> f64 {
    recurrence_last(n, x, PI.powf(-0.25) * (-0.5 * x * x).exp())
}

pub(crate) fn chi_all_unchecked(x: f64, out: &mut [f64]) {
    let Some(first) = out.first_mut() else {
        return;
    };
    *first = PI.powf(-0.25) * (-0.5 * x * x).exp();
    if out.len() == 1 {
        return;
    }
    out[1] = std::f64::consts::SQRT_2 * x * out[0];
    for k in 1..out.len() - 1 {
        let kf = k as f64;
        out[k + 1] = (2.0 / (kf + 1.0)).sqrt() * x * out[k] - (kf / (kf + 1.0)).sqrt() * out[k - 1];
    }
}

// ψ_{k+1} = √(2/(k+1)) x ψ_k − √(k/(k+1)) ψ_{k−1}, seeded with ψ_0 = `seed`.
// Every term is odd or even in x as a whole, so χ_n(−x) = (−1)^n χ_n(x) holds
// bit for bit.
fn recurrence_last(n: usize, x: f64, seed: f64) -> f64 {
    let mut prev = 0.0;
    let mut curr = seed;
    for k in 0..n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * curr - (kf / (kf + 1.0)).sqrt() * prev;
        prev = curr;
        curr = next;
    }
    curr
}

/// Compensated (Neumaier) summation in iteration order.
pub fn neumaier_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadratureKind {
    /// Weight `e^{-x²}` is folded into the weights.
    HermiteWeighted,
    UniformTrapezoid,
}

/// A fixed quadrature rule: strictly increasing nodes with positive weights.
#[derive(Debug, Clone, PartialEq)]
pub struct Quadrature {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    kind: QuadratureKind,
}

impl Quadrature {
    pub fn new(nodes: Vec<f64>, weights: Vec<f64>, kind: QuadratureKind) -> Result<Self> {
        if nodes.is_empty() || nodes.len() != weights.len() {
            return Err(Error::InvalidArgument(format!(
                "quadrature needs matching non-empty node/weight lists (got {} and {})",
                nodes.len(),
                weights.len()
            )));
        }
        if nodes.iter().chain(&weights).any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("quadrature entries must be finite".into()));
        }
        if nodes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("quadrature nodes must be strictly increasing".into()));
        }
        if weights.iter().any(|&w| w <= 0.0) {
            return Err(Error::InvalidArgument("quadrature weights must be positive".into()));
        }
        Ok(Self { nodes, weights, kind })
    }

    /// `n`-point Gauss–Hermite rule for `∫ e^{-x²} f(x) dx`.
    ///
    /// Nodes are found by Newton iteration on the normalized recurrence,
    /// starting from the usual asymptotic guesses for the largest roots.
    pub fn gauss_hermite(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("Gauss-Hermite rule needs at least one node".into()));
        }
        const MAX_ITER: usize = 100;
        let pim4 = PI.powf(-0.25);
        let nf = n as f64;
        let mut x = vec![0.0; n];
        let mut w = vec![0.0; n];
        let half = n.div_ceil(2);
        let mut z = 0.0_f64;
        for i in 0..half {
            z = match i {
                0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-1.0 / 6.0),
                1 => z - 1.14 * nf.powf(0.426) / z,
                2 => 1.86 * z - 0.86 * x[0],
                3 => 1.91 * z - 0.91 * x[1],
                _ => 2.0 * z - x[i - 2],
            };
            let mut converged = false;
            let mut derivative = 0.0;
            for _ in 0..MAX_ITER {
                let mut p1 = pim4;
                let mut p2 = 0.0;
                for j in 0..n {
                    let p3 = p2;
                    p2 = p1;
                    let jf = j as f64;
                    p1 = z * (2.0 / (jf + 1.0)).sqrt() * p2 - (jf / (jf + 1.0)).sqrt() * p3;
                }
                derivative = (2.0 * nf).sqrt() * p2;
                let step = p1 / derivative;
                z -= step;
                if step.abs() <= 1e-15 * z.abs().max(1.0) {
                    converged = true;
                    break;
                }
            }
            if !converged {
                return Err(Error::InvalidArgument(format!(
                    "Gauss-Hermite root {i} of {n} did not converge"
                )));
            }
            x[i] = z;
            x[n - 1 - i] = -z;
            w[i] = 2.0 / (derivative * derivative);
            w[n - 1 - i] = w[i];
        }
        if n % 2 == 1 {
            x[n / 2] = 0.0;
        }
        x.reverse();
        w.reverse();
        Self::new(x, w, QuadratureKind::HermiteWeighted)
    }

    /// Shared 128-node Gauss–Hermite rule.
    pub fn default_hermite() -> &'static Self {
        static RULE: OnceLock<Quadrature> = OnceLock::new();
        RULE.get_or_init(|| {
            Quadrature::gauss_hermite(DEFAULT_HERMITE_NODES).expect("128-node Gauss-Hermite rule converges")
        })
    }

    /// Composite trapezoid rule on `[a, b]` with `points` equally spaced nodes.
    pub fn trapezoid(a: f64, b: f64, points: usize) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) || points < 2 {
            return Err(Error::InvalidArgument(format!(
                "trapezoid rule needs a < b and at least two points (a={a}, b={b}, points={points})"
            )));
        }
        let h = (b - a) / (points - 1) as f64;
        let nodes = (0..points).map(|i| a + i as f64 * h).collect();
        let mut weights = vec![h; points];
        weights[0] = 0.5 * h;
        weights[points - 1] = 0.5 * h;
        Self::new(nodes, weights, QuadratureKind::UniformTrapezoid)
    }

    /// Trapezoid cross-check rule: `|x| <= 8`, step `1e-3`.
    pub fn default_trapezoid() -> &'static Self {
        static RULE: OnceLock<Quadrature> = OnceLock::new();
        RULE.get_or_init(|| Quadrature::trapezoid(-8.0, 8.0, 16_001).expect("valid trapezoid rule"))
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn kind(&self) -> QuadratureKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// `Σ w_i f(x_i)`. For a Hermite-weighted rule `f` must already have the
/// Gaussian factor divided out.
pub fn integrate_1d<F: Fn(f64) -> f64>(f: F, q: &Quadrature) -> Result<f64> {
    let mut terms = Vec::with_capacity(q.len());
    for (index, (&x, &w)) in q.nodes.iter().zip(&q.weights).enumerate() {
        let fx = f(x);
        if !fx.is_finite() {
            return Err(Error::NonFiniteSample { index, x });
        }
        terms.push(w * fx);
    }
    Ok(neumaier_sum(terms))
}
