use super::{boost_point, normal_coordinates, Rapidity, SpacetimePoint};
use crate::error::Result;
use crate::special::{check_index, chi_unchecked, MAX_INDEX};

/// Rest-frame state `χ_n(z) χ_0(t)`: excited along `z`, ground state in `t`.
pub fn psi_rest(n: usize, p: SpacetimePoint) -> Result<f64> {
    check_index(n, MAX_INDEX)?;
    Ok(psi_rest_unchecked(n, p))
}

/// Rest state `n` seen from a frame moving with rapidity `η`.
///
/// In light-cone variables this is
/// `[1/(π 2^n n!)]^{1/2} H_n((e^{−η}u + e^{η}v)/√2) exp(−(e^{−2η}u² + e^{2η}v²)/2)`,
/// evaluated here as `χ_n(z') χ_0(t')` with `(z', t')` the boosted point.
pub fn psi_boosted(n: usize, eta: Rapidity, p: SpacetimePoint) -> Result<f64> {
    check_index(n, MAX_INDEX)?;
    Ok(psi_boosted_unchecked(n, eta, p))
}

/// `χ_a(x) χ_b(y) χ_n(z) χ_0(t)`
pub fn psi_cartesian_4d(a: usize, b: usize, n: usize, x: f64, y: f64, z: f64, t: f64) -> Result<f64> {
    for i in [a, b, n] {
        check_index(i, MAX_INDEX)?;
    }
    Ok(chi_unchecked(a, x) * chi_unchecked(b, y) * chi_unchecked(n, z) * chi_unchecked(0, t))
}

/// Two-oscillator ground state `χ_0(x₁)χ_0(x₂)` after the normal-mode squeeze
/// `y₁ → e^{−η} y₁`, `y₂ → e^{η} y₂`.
pub fn squeezed_ground_state(eta: Rapidity, x1: f64, x2: f64) -> f64 {
    let (y1, y2) = normal_coordinates(x1, x2);
    let e = eta.get();
    let (s1, s2) = ((-e).exp() * y1, e.exp() * y2);
    let (r1, r2) = normal_coordinates(s1, s2);
    chi_unchecked(0, r1) * chi_unchecked(0, r2)
}

pub(crate) fn psi_rest_unchecked(n: usize, p: SpacetimePoint) -> f64 {
    chi_unchecked(n, p.z) * chi_unchecked(0, p.t)
}

pub(crate) fn psi_boosted_unchecked(n: usize, eta: Rapidity, p: SpacetimePoint) -> f64 {
    psi_rest_unchecked(n, boost_point(p, eta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{hermite, ln_factorial};
    use std::f64::consts::{FRAC_1_SQRT_2, LN_2, PI};

    // Literal light-cone form with the raw Hermite polynomial.
    fn psi_boosted_closed_form(n: usize, eta: f64, z: f64, t: f64) -> f64 {
        let (u, v) = (FRAC_1_SQRT_2 * (z + t), FRAC_1_SQRT_2 * (z - t));
        let ln_norm = -0.5 * (PI.ln() + n as f64 * LN_2 + ln_factorial(n));
        let arg = FRAC_1_SQRT_2 * ((-eta).exp() * u + eta.exp() * v);
        let expo = -0.5 * ((-2.0 * eta).exp() * u * u + (2.0 * eta).exp() * v * v);
        ln_norm.exp() * hermite(n, arg).unwrap() * expo.exp()
    }

    #[test]
    fn rest_examples() {
        let origin = SpacetimePoint::new(0.0, 0.0);
        assert!((psi_rest(0, origin).unwrap() - 1.0 / PI.sqrt()).abs() < 1e-15);
        assert_eq!(psi_rest(1, SpacetimePoint::new(0.0, 0.5)).unwrap(), 0.0);
        assert!(psi_rest(MAX_INDEX + 1, origin).is_err());
    }

    #[test]
    fn boosted_matches_light_cone_form() {
        for n in 0..6 {
            for &eta in &[-1.2, 0.0, 0.35, 1.0, 2.0] {
                for &(z, t) in &[(0.3, -0.1), (1.2, 0.8), (-0.7, 1.9), (0.0, 0.0)] {
                    let a = psi_boosted(n, Rapidity::new(eta).unwrap(), SpacetimePoint::new(z, t)).unwrap();
                    let b = psi_boosted_closed_form(n, eta, z, t);
                    assert!((a - b).abs() < 1e-13, "n={n} eta={eta} ({z},{t}): {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn boosted_examples() {
        let p = SpacetimePoint::new(0.3, -0.1);
        assert_eq!(psi_boosted(0, Rapidity::ZERO, p).unwrap(), psi_rest(0, p).unwrap());
        for eta in [0.5, 3.0, -7.0] {
            let v = psi_boosted(0, Rapidity::new(eta).unwrap(), SpacetimePoint::new(0.0, 0.0)).unwrap();
            assert!((v - 1.0 / PI.sqrt()).abs() < 1e-15);
        }
    }

    #[test]
    fn cartesian_examples() {
        let v = psi_cartesian_4d(0, 0, 0, 0.0, 0.0, 0.0, 0.0).unwrap();
        assert!((v - 1.0 / PI).abs() < 1e-15);
        assert_eq!(psi_cartesian_4d(1, 2, 2, 0.0, 0.4, 0.1, 0.3).unwrap(), 0.0);
        assert_eq!(psi_cartesian_4d(2, 3, 0, 0.5, 0.0, 1.0, 0.3).unwrap(), 0.0);
        assert!(psi_cartesian_4d(0, MAX_INDEX + 1, 0, 0.0, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn squeezed_ground_state_is_boosted_ground_state() {
        for &eta in &[0.0, 0.4, 1.3] {
            let r = Rapidity::new(eta).unwrap();
            for &(x1, x2) in &[(0.2, 0.5), (-1.0, 0.7), (1.5, 1.4)] {
                let a = squeezed_ground_state(r, x1, x2);
                let b = psi_boosted(0, r, SpacetimePoint::new(x1, x2)).unwrap();
                assert!((a - b).abs() < 1e-14);
            }
        }
    }
}
