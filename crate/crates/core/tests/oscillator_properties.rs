use covox::oscillator::*;
use covox::special::{hermite, ln_factorial};
use proptest::prelude::*;
use std::f64::consts::PI;

fn eta(v: f64) -> Rapidity {
    Rapidity::new(v).unwrap()
}

// Independent closed form of the boosted state: Hermite polynomial in the
// rest-frame z written through light-cone variables, Gaussian in the moving
// frame's u and v.
fn psi_literal(n: usize, e: f64, z: f64, t: f64) -> f64 {
    let u = (z + t) / 2f64.sqrt();
    let v = (z - t) / 2f64.sqrt();
    let rest_z = ((-e).exp() * u + e.exp() * v) / 2f64.sqrt();
    let norm = PI.powf(-0.5) / (2f64.powi(n as i32) * ln_factorial(n).exp()).sqrt();
    let gauss = (-0.5 * ((-2.0 * e).exp() * u * u + (2.0 * e).exp() * v * v)).exp();
    norm * hermite(n, rest_z).unwrap() * gauss
}

#[test]
fn boosted_state_matches_literal_form() {
    for n in 0..=4 {
        for &e in &[-1.0, 0.0, 0.3, 1.2] {
            for &(z, t) in &[(0.0, 0.0), (0.7, -0.4), (-1.5, 2.0), (3.0, 2.5)] {
                let a = psi_boosted(n, eta(e), SpacetimePoint::new(z, t)).unwrap();
                let b = psi_literal(n, e, z, t);
                assert!((a - b).abs() < 1e-12 * (1.0 + b.abs()), "n={n} eta={e} ({z},{t})");
            }
        }
    }
}

#[test]
fn unit_norm_under_boost() {
    for n in 0..=4 {
        for &e in &[0.0, 0.5, 1.0, 1.5] {
            let r = eta(e);
            let grid = WaveGrid::sample(default_extent(e), DEFAULT_GRID_COUNT, |p| psi_boosted(n, r, p).unwrap()).unwrap();
            assert!((grid.norm_l2() - 1.0).abs() < 1e-6, "n={n} eta={e}: {}", grid.norm_l2());
        }
    }
}

#[test]
fn series_converges_to_direct_evaluation() {
    for n in [0, 2, 4] {
        for &e in &[0.25, 1.0] {
            let r = eta(e);
            let spectrum = ExpansionSpectrum::to_tolerance(n, r, 1e-10).unwrap();
            assert!(spectrum.tail_bound <= 1e-10);
            let extent = default_extent(e);
            let series = spectrum.sample_grid(extent, 401).unwrap();
            let direct = WaveGrid::sample(extent, 401, |p| psi_boosted(n, r, p).unwrap()).unwrap();
            let dist = direct.l2_distance(&series).unwrap();
            assert!(dist <= spectrum.tail_bound.sqrt(), "n={n} eta={e}: {dist} vs {}", spectrum.tail_bound.sqrt());
        }
    }
}

#[test]
fn ground_state_coefficients_decay_geometrically() {
    for &e in &[0.1, 0.5, 1.0, 2.0, -0.7] {
        let s = expansion_coefficients(0, eta(e), 60).unwrap();
        for w in s.coefficients.windows(2) {
            assert!((w[1] / w[0] - e.tanh()).abs() < 1e-12);
        }
        if e > 0.0 {
            assert!(s.coefficients.iter().all(|&c| c > 0.0));
        }
    }
}

#[test]
fn probabilities_sum_to_one() {
    for n in 0..=6 {
        for &e in &[0.0, 0.3, 1.0, 2.5] {
            let s = ExpansionSpectrum::to_tolerance(n, eta(e), 1e-12).unwrap();
            let total: f64 = s.probabilities().sum::<f64>() + s.tail_bound;
            assert!((total - 1.0).abs() < 1e-10, "n={n} eta={e}: {total}");
        }
    }
}

#[test]
fn eigen_residual_is_second_order() {
    for n in 0..=3 {
        for &e in &[0.0, 0.5, 1.0] {
            let r = eta(e);
            let extent = default_extent(e);
            let residual = |count: usize| {
                let g = WaveGrid::sample(extent, count, |p| psi_boosted(n, r, p).unwrap()).unwrap();
                let h = apply_h_minus(&g, 1.0).unwrap();
                h.interior_max_abs_diff(&g.scaled(n as f64)).unwrap()
            };
            let ratio = residual(401) / residual(801);
            assert!((ratio - 4.0).abs() < 0.5, "n={n} eta={e}: ratio {ratio}");
        }
    }
}

#[test]
fn rapidity_bounds() {
    assert!(Rapidity::new(MAX_RAPIDITY).is_ok());
    assert!(Rapidity::new(MAX_RAPIDITY + 0.1).is_err());
    assert!(Rapidity::new(f64::NAN).is_err());
    assert!(rapidity_from_beta(1.0).is_err());
    assert!((rapidity_from_beta(0.6).unwrap().get() - 0.6f64.atanh()).abs() < 1e-15);
}

proptest! {
    #[test]
    fn boost_preserves_interval(z in -50.0f64..50.0, t in -50.0f64..50.0, e in -3.0f64..3.0) {
        let p = SpacetimePoint::new(z, t);
        let q = boost_point(p, eta(e));
        let scale = (z * z + t * t) * (2.0 * e.abs()).exp();
        prop_assert!((q.interval() - p.interval()).abs() <= 1e-12 * scale.max(1.0));
    }

    #[test]
    fn boosts_compose(z in -5.0f64..5.0, t in -5.0f64..5.0, a in -2.0f64..2.0, b in -2.0f64..2.0) {
        let p = SpacetimePoint::new(z, t);
        let two = boost_point(boost_point(p, eta(a)), eta(b));
        let one = boost_point(p, eta(a + b));
        prop_assert!((two.z - one.z).abs() < 1e-10 && (two.t - one.t).abs() < 1e-10);
    }

    #[test]
    fn lightcone_round_trip(z in -10.0f64..10.0, t in -10.0f64..10.0) {
        let (u, v) = lightcone(SpacetimePoint::new(z, t));
        let back = from_lightcone(u, v);
        prop_assert!((back.z - z).abs() < 1e-13 && (back.t - t).abs() < 1e-13);
        prop_assert!((u * u + v * v - z * z - t * t).abs() < 1e-11);
    }
}
