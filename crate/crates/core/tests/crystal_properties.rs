use pcsqueeze::crystal_design::constants::SPEED_OF_LIGHT;
use pcsqueeze::crystal_design::{
    band_frequencies, band_frequency, design, dispersion_residual, group_velocity, CrystalSpec,
    ResonatorScenario,
};
use proptest::prelude::*;

const BANDS: usize = 8;
const GRID: usize = 200;

fn zone_grid(spec: &CrystalSpec<f64>) -> Vec<f64> {
    let edge = spec.zone_edge();
    (0..GRID)
        .map(|j| edge * j as f64 / (GRID - 1) as f64)
        .collect()
}

#[test]
fn residual_vanishes_across_the_zone() {
    let spec = CrystalSpec::default();
    let mut worst = 0.0f64;
    for k in zone_grid(&spec) {
        for omega in band_frequencies(k, BANDS, &spec).unwrap() {
            worst = worst.max(dispersion_residual(omega, k, &spec).abs());
        }
    }
    assert!(worst <= 1e-10, "{worst}");
}

#[test]
fn bands_are_ordered_and_continuous() {
    let spec = CrystalSpec::default();
    let ks = zone_grid(&spec);
    let h = ks[1] - ks[0];
    let table: Vec<Vec<f64>> = ks
        .iter()
        .map(|&k| band_frequencies(k, BANDS, &spec).unwrap())
        .collect();
    for row in &table {
        assert!(row.windows(2).all(|w| w[0] < w[1]));
    }
    for pair in table.windows(2) {
        for (b, (lo, hi)) in pair[0].iter().zip(&pair[1]).enumerate() {
            let step = (hi - lo).abs();
            assert!(
                step <= SPEED_OF_LIGHT * h * (1.0 + 1e-9),
                "band {} jumps by {step}",
                b + 1
            );
        }
    }
}

#[test]
fn group_velocity_matches_secant() {
    let spec = CrystalSpec::default();
    let ks = zone_grid(&spec);
    let mut worst = 0.0f64;
    for band in 1..=BANDS {
        for j in 20..GRID - 20 {
            let (k0, k1) = (ks[j], ks[j + 1]);
            let secant = (band_frequency(k1, band, &spec).unwrap()
                - band_frequency(k0, band, &spec).unwrap())
                / (k1 - k0);
            let vg = group_velocity(0.5 * (k0 + k1), band, &spec).unwrap();
            worst = worst.max((vg / secant.abs() - 1.0).abs());
            assert!(vg <= SPEED_OF_LIGHT);
        }
    }
    assert!(worst < 0.01, "{worst}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn residual_small_for_random_crystals(
        la in 2e-7f64..1e-6, lb in 2e-7f64..1e-6, na in 1.2f64..3.0, frac in 0.0f64..1.0,
    ) {
        let spec = CrystalSpec::new(la, lb, na * na, 1.0).unwrap();
        let k = frac * spec.zone_edge();
        let omegas = band_frequencies(k, 4, &spec).unwrap();
        prop_assert!(omegas.windows(2).all(|w| w[0] < w[1]));
        for omega in omegas {
            prop_assert!(dispersion_residual(omega, k, &spec).abs() <= 1e-10);
        }
    }

    #[test]
    fn squeezing_grows_with_pump(w in 1e-5f64..1e-2, scale in 1.1f64..4.0) {
        let low = ResonatorScenario::<f64> { w_pump: w, ..Default::default() };
        let high = ResonatorScenario { w_pump: w * scale, ..Default::default() };
        let (a, b) = (design(&low).unwrap(), design(&high).unwrap());
        // r is linear in the field amplitude, hence in sqrt(W)
        prop_assert!((b.squeezing.r / a.squeezing.r - scale.sqrt()).abs() < 1e-10);
        prop_assert!(b.alpha_prime < a.alpha_prime);
        prop_assert_eq!(a.alpha, b.alpha);
    }
}

#[test]
fn golden_chain_in_one_call() {
    let rep = design(&ResonatorScenario::<f64>::default()).unwrap();
    let rel = |got: f64, want: f64| (got / want - 1.0).abs();
    assert!(rel(rep.amplitude, 9.79e4) < 5e-3);
    assert!(rel(rep.laps.t1, 3.67e-10) < 5e-3);
    assert!(rel(rep.squeezing.r, 1.84) < 1e-2);
    assert!(rel(rep.alpha, 1.00) < 1e-2);
    assert!(rel(rep.w_out, 2.31e-9) < 3e-2);
}

#[test]
fn zero_pump_takes_the_unsqueezed_path() {
    let rep = design(&ResonatorScenario::<f64> {
        w_pump: 0.0,
        ..Default::default()
    })
    .unwrap();
    assert_eq!(rep.squeezing.r, 0.0);
    assert_eq!(rep.alpha_prime, rep.alpha);
    assert!(rep.w_out > 0.0 && rep.w_out.is_finite());
}
