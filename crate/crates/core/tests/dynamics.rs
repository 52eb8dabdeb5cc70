use nflab_core::dynamics::*;
use nflab_core::stats::arcsine_cdf;
use proptest::prelude::*;

/// `Γ(z) = 2∫₀^∞ s^{2z−1} e^{−s²} ds` by composite Simpson on `[0, 12]`,
/// shifted through `Γ(z) = Γ(z + 1)/z` so the integrand is smooth at 0.
fn gamma_quadrature(z: f64) -> f64 {
    if z < 2.0 {
        return gamma_quadrature(z + 1.0) / z;
    }
    let n = 200_000;
    let h = 12.0 / n as f64;
    let f = |s: f64| if s == 0.0 { 0.0 } else { 2.0 * s.powf(2.0 * z - 1.0) * (-s * s).exp() };
    let mut acc = f(0.0) + f(12.0);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(i as f64 * h);
    }
    acc * h / 3.0
}

#[test]
fn gamma_matches_quadrature() {
    for z in [0.75, 1.0, 1.5, 2.3, 3.7, 5.0, 7.25] {
        let q = gamma_quadrature(z);
        let g = gamma_function(z).unwrap();
        assert!(((g - q) / q).abs() < 1e-8, "z={z}: {g} vs {q}");
    }
}

#[test]
fn gamma_closed_forms() {
    let mut fact = 1.0;
    for n in 1..=10u32 {
        if n > 1 {
            fact *= f64::from(n - 1);
        }
        let g = gamma_function(f64::from(n)).unwrap();
        assert!(((g - fact) / fact).abs() < 1e-9);
    }
    assert!((gamma_function(0.5).unwrap() - std::f64::consts::PI.sqrt()).abs() < 1e-9);
    assert!((beta_density(0.5, 0.5, 0.5).unwrap() - 2.0 / std::f64::consts::PI).abs() < 1e-12);
}

#[test]
fn boundary_gamma_is_exactly_minus_one_pair() {
    let e = pso_eigenvalues(4.0);
    assert!((e.lambda1.re + 1.0).abs() < 1e-12 && e.lambda1.im.abs() < 1e-12);
    assert!((e.lambda2.re + 1.0).abs() < 1e-12 && e.lambda2.im.abs() < 1e-12);
    assert_eq!(classify_pso_regime(4.0).unwrap(), PsoRegime::BifurcationBoundary);
}

#[test]
fn divergent_orbit_distances_increase() {
    let o = iterate_pso_linear(5.0, 0.0, 1.0, 100).unwrap();
    assert!(o.distances.windows(2).all(|w| w[1] > w[0]));
}

proptest! {
    #[test]
    fn eigenvalue_identities(gamma in 0.0f64..20.0) {
        let e = pso_eigenvalues(gamma);
        let prod = e.lambda1 * e.lambda2;
        let sum = e.lambda1 + e.lambda2;
        prop_assert!((prod.re - 1.0).abs() < 1e-12 && prod.im.abs() < 1e-12);
        prop_assert!((sum.re - (2.0 - gamma)).abs() < 1e-12 && sum.im.abs() < 1e-12);
    }

    #[test]
    fn unit_modulus_below_four(gamma in 0.0f64..4.0) {
        prop_assume!(gamma > 0.0);
        let e = pso_eigenvalues(gamma);
        prop_assert!((e.lambda1.norm() - 1.0).abs() <= 1e-9);
        prop_assert!((e.lambda2.norm() - 1.0).abs() <= 1e-9);
        prop_assert_eq!(classify_pso_regime(gamma).unwrap(), PsoRegime::CyclicQuasiCyclic);
    }

    #[test]
    fn growth_above_four(gamma in 4.0f64..50.0) {
        prop_assume!(gamma > 4.0 + 1e-9);
        prop_assert!(pso_eigenvalues(gamma).max_modulus() > 1.0);
    }

    #[test]
    fn rescaling_is_exact_for_powers_of_four(k in -3i32..=3, beta0 in 0.0f64..4.5, u0 in -2.0f64..2.0) {
        let gamma = 4f64.powi(k);
        let root = gamma.sqrt();
        let mut u = u0;
        let mut y = u0 / root;
        for _ in 0..1000 {
            u = firefly_map_step(u, beta0);
            y = firefly_raw_step(y, beta0, gamma).unwrap();
            if u != 0.0 && u.abs() < 64.0 * f64::MIN_POSITIVE {
                // the power-of-two scaling is no longer exact among subnormals
                break;
            }
            prop_assert_eq!(y * root, u);
        }
    }

    #[test]
    fn logistic_stays_in_unit_interval(u in 0.0f64..=1.0, lambda in 0.0f64..=4.0) {
        let v = logistic_step(u, lambda).unwrap();
        prop_assert!((0.0..=1.0).contains(&v));
    }

    #[test]
    fn firefly_stable_below_two(beta0 in 0.05f64..1.95, u0 in -0.1f64..0.1) {
        let map = IteratedMap::new(MapKind::FireflyNormalized, beta0, 1.0).unwrap();
        let o = orbit(map, u0, 20_000, 0).unwrap();
        prop_assert_eq!(o.classification, OrbitClass::FixedPoint);
        prop_assert!(o.iterates.last().unwrap().abs() < 1e-6);
    }

    #[test]
    fn firefly_unstable_above_two(beta0 in 2.05f64..=4.0, u0 in 0.001f64..0.1) {
        let map = IteratedMap::new(MapKind::FireflyNormalized, beta0, 1.0).unwrap();
        let o = orbit(map, u0, 5_000, 1_000).unwrap();
        prop_assert!(o.classification != OrbitClass::FixedPoint, "{:?}", o.classification);
        prop_assert!(o.iterates.iter().all(|u| u.abs() > 1e-3));
    }

    #[test]
    fn histogram_counts_sum_to_total(u0 in 0.01f64..0.99, bins in 1usize..50, n in 1usize..2000) {
        let h = invariant_density(4.0, u0, n, bins, 0).unwrap();
        prop_assert_eq!(h.counts.iter().sum::<u64>(), h.total);
        prop_assert_eq!(h.total, n as u64);
    }
}

#[test]
fn firefly_local_derivative() {
    for beta0 in [0.3, 1.0, 2.5, 3.7] {
        let h = 1e-7;
        let d = (firefly_map_step(h, beta0) - firefly_map_step(-h, beta0)) / (2.0 * h);
        assert!((d - (1.0 - beta0)).abs() < 1e-6);
    }
}

#[test]
fn logistic_density_close_to_arcsine() {
    let h = invariant_density(4.0, 0.3, 1_000_000, 100, 0).unwrap();
    assert!(h.ks_arcsine < 0.01, "{}", h.ks_arcsine);
    let expected_first = arcsine_cdf(h.edges[1]) * h.total as f64;
    assert!((h.counts[0] as f64 - expected_first).abs() / expected_first < 0.05);
}

#[test]
fn scan_over_chaotic_window_finds_aperiodic() {
    let map = IteratedMap::new(MapKind::FireflyNormalized, 3.8, 1.0).unwrap();
    let rows = bifurcation_scan(map, 3.8, 4.2, 9, 0.5, 11_000, 1_000, 20).unwrap();
    assert!(rows.iter().any(|r| r.classification == OrbitClass::Aperiodic));
    let map = IteratedMap::new(MapKind::FireflyNormalized, 0.1, 1.0).unwrap();
    let rows = bifurcation_scan(map, 0.1, 1.9, 19, 0.5, 11_000, 1_000, 20).unwrap();
    assert!(rows.iter().all(|r| r.classification == OrbitClass::FixedPoint));
}
