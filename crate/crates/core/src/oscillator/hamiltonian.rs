//! Finite-difference oscillator Hamiltonians on sample grids.
//!
//! ```text
//! H± = ½ [(−∂₁² + x₁²) ± (−∂₂² + x₂²)]
//! ```
//!
//! Second derivatives use the three-point central stencil, so the residual
//! against an exact eigenfunction is `O(h²)`. The outermost ring of the result
//! has no stencil and is zeroed and flagged through [`WaveGrid::margin`].

use super::grid::WaveGrid;
use crate::error::{Error, Result};

/// Leading truncation error of the stencil, `h²/24 · max(|∂⁴₁ψ| + |∂⁴₂ψ|)`,
/// with the fourth derivatives taken from five-point differences.
pub fn estimate_truncation_error(grid: &WaveGrid) -> Result<f64> {
    let n = grid.count();
    if n < 5 {
        return Err(Error::InvalidArgument(format!("grid count {n} too small for a stencil")));
    }
    let h = grid.spacing();
    let f = |i: usize, j: usize| grid.value(i, j);
    let mut worst = 0.0_f64;
    for i in 2..n - 2 {
        for j in 2..n - 2 {
            let d4z = f(i - 2, j) - 4.0 * f(i - 1, j) + 6.0 * f(i, j) - 4.0 * f(i + 1, j) + f(i + 2, j);
            let d4t = f(i, j - 2) - 4.0 * f(i, j - 1) + 6.0 * f(i, j) - 4.0 * f(i, j + 1) + f(i, j + 2);
            worst = worst.max(d4z.abs() + d4t.abs());
        }
    }
    Ok(worst / (24.0 * h * h))
}

fn apply(grid: &WaveGrid, sign: f64, tol: f64) -> Result<WaveGrid> {
    let estimate = estimate_truncation_error(grid)?;
    if estimate.is_nan() || estimate > tol {
        return Err(Error::GridTooCoarse { estimate, tolerance: tol });
    }
    let n = grid.count();
    let h2 = grid.spacing().powi(2);
    let xs = grid.axis();
    let mut out = vec![0.0; n * n];
    for i in 1..n - 1 {
        for j in 1..n - 1 {
            let f = grid.value(i, j);
            let d2z = (grid.value(i + 1, j) - 2.0 * f + grid.value(i - 1, j)) / h2;
            let d2t = (grid.value(i, j + 1) - 2.0 * f + grid.value(i, j - 1)) / h2;
            let first = -d2z + xs[i] * xs[i] * f;
            let second = -d2t + xs[j] * xs[j] * f;
            out[i * n + j] = 0.5 * (first + sign * second);
        }
    }
    Ok(WaveGrid::with_margin(grid.extent(), n, out, grid.margin() + 1))
}

/// `H₋` over `(z, t)`. Fails with [`Error::GridTooCoarse`] when the estimated
/// stencil error exceeds `tol`.
pub fn apply_h_minus(grid: &WaveGrid, tol: f64) -> Result<WaveGrid> {
    apply(grid, -1.0, tol)
}

/// `H₊` over `(x₁, x₂)`, stored on the same grid layout.
pub fn apply_h_plus(grid: &WaveGrid, tol: f64) -> Result<WaveGrid> {
    apply(grid, 1.0, tol)
}
