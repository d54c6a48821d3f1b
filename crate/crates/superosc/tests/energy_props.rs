//! Energy invariants: quadrature oracles for the total and cumulative
//! energies, the Bessel product integral entering the E(T) series, the
//! intermediate fractional-energy bound, and monotonicity of E(T).

mod common;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use superosc::energy;
use superosc::shift::{self, BesselSeries};
use superosc::spectrum::{self, LegendreSpectrum};

/// Coefficient formula for the total energy against the tail-corrected
/// time-domain quadrature.
#[test]
fn total_energy_matches_time_domain() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..3 {
        let spec = common::random_unit_energy_spectrum(&mut rng, 8);
        let exact = energy::total_energy(&spec);
        let oracle = common::total_energy_oracle(&spec, 500.0);
        assert!((exact - oracle).abs() < 1e-3, "{exact} vs {oracle}");
    }
}

/// ∫_0^∞ j_0 j_1 dt = 1/2, the n=0, p=0 constant of the E(T) series.
#[test]
fn bessel_product_integral_constant() {
    let oracle = common::simpson(
        |t| {
            superosc::basis::spherical_bessel(0, t) * superosc::basis::spherical_bessel(1, t)
        },
        0.0,
        500.0,
        400_000,
    );
    assert!((oracle - 0.5).abs() < 1e-4, "{oracle}");
}

/// Series-formula E(T) against the truncated quadrature with tail
/// correction, for a random 6-term spectrum.
#[test]
fn cumulative_energy_matches_quadrature() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let spec = common::random_unit_energy_spectrum(&mut rng, 6);
    for &t_upper in &[-1.2, 0.0, 0.8, 2.5] {
        let series = energy::cumulative_energy(&spec, t_upper, 40).unwrap();
        let oracle = common::energy_oracle_upto(&spec, t_upper, 500.0);
        assert!(
            (series - oracle).abs() < 1e-3,
            "T={t_upper}: {series} vs {oracle}"
        );
    }
}

/// E(T) is non-decreasing in T.
#[test]
fn cumulative_energy_is_monotone() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let spec = common::random_unit_energy_spectrum(&mut rng, 8);
    let mut previous = f64::NEG_INFINITY;
    for k in 0..=40 {
        let t = -4.0 + 8.0 * k as f64 / 40.0;
        let value = energy::cumulative_energy(&spec, t, 48).unwrap();
        assert!(
            value + 1e-9 >= previous,
            "E({t}) = {value} dropped below {previous}"
        );
        previous = value;
    }
}

/// Whole-line interval energy approaches the total (T large enough that the
/// 1/(πT) tail sits below the tolerance).
#[test]
fn interval_energy_converges_to_total() {
    let spec = LegendreSpectrum::from_real(&[1.0]);
    let t = 2000.0;
    let whole = energy::interval_energy(&spec, -t, t, 2120).unwrap();
    let total = energy::total_energy(&spec);
    assert!((whole - total).abs() < 1e-3, "{whole} vs {total}");
}

/// The intermediate bound ΔE/E ≤ (1/(2(1+3r²))) ∫ |g/γ_0(t')|² dt with t'
/// the argmax of |g| on the interval.
#[test]
fn intermediate_bound_holds() {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    for _ in 0..10 {
        let spec = common::random_unit_energy_spectrum(&mut rng, 8);
        let t_i = -1.0 + 2.0 * rng.random::<f64>();
        let delta = 0.1 + 1.4 * rng.random::<f64>();
        let t_f = t_i + delta;
        let total = energy::total_energy(&spec);
        let delta_e = energy::interval_energy(&spec, t_i, t_f, 40).unwrap();
        let r = energy::min_log_derivative(&spec, t_i, t_f, 200).unwrap();

        // argmax of |g| on a fine grid; gamma_0(t') = sqrt(pi/2) g(t').
        let (mut best_t, mut best) = (t_i, 0.0f64);
        for k in 0..=400 {
            let t = t_i + delta * k as f64 / 400.0;
            let v = spectrum::evaluate(&spec, t).norm();
            if v > best {
                best = v;
                best_t = t;
            }
        }
        let series = BesselSeries::from_spectrum(&spec);
        let gamma0 = shift::shift_coefficients(&series, best_t, 1)
            .unwrap()
            .coefficient(0);
        let integral = common::simpson(
            |t| spectrum::evaluate(&spec, t).norm_sqr() / gamma0.norm_sqr(),
            t_i,
            t_f,
            4000,
        );
        let intermediate = integral / (2.0 * (1.0 + 3.0 * r * r));
        assert!(
            delta_e / total <= intermediate + 1e-9,
            "fraction {} vs intermediate bound {intermediate}",
            delta_e / total
        );
        // And the final bound is looser than the intermediate form.
        assert!(intermediate <= energy::energy_bound(delta, r) + 1e-9);
    }
}

/// Interval energy of the supergrowing line fit. The fit's total energy
/// (1.8e24, almost all of it in the side lobes outside the window) dwarfs
/// the in-window energy by ~21 decades, far beyond f64 cancellation in the
/// E(t_f) - E(t_i) series, so this is the quadrature route's job.
#[test]
fn supergrowing_fit_interval_energy() {
    let fit = superosc::fit::approximate_line(
        &superosc::fit::TargetFunction::Exponential(10.0),
        -0.5,
        0.5,
        10,
        1e-12,
    )
    .unwrap();
    // gamma_n(0) = i^n c_n, so c_n = (-i)^n gamma_n.
    let coeffs: Vec<Complex64> = fit
        .coefficients
        .iter()
        .enumerate()
        .map(|(n, &g)| (-Complex64::i()).powu(n as u32) * g)
        .collect();
    let spec = LegendreSpectrum::new(coeffs);
    let quad = energy::interval_energy_quadrature(&spec, -0.5, 0.5);
    let oracle = common::simpson(
        |t| spectrum::evaluate(&spec, t).norm_sqr(),
        -0.5,
        0.5,
        40_000,
    );
    assert!((quad - oracle).abs() < 1e-6 * oracle, "{quad} vs {oracle}");
    // Matching e^{10t} on [-1/2, 1/2] costs a window energy near the value
    // of the target itself: integral of e^{20 t} is (e^10 - e^-10)/20.
    let target_energy = (10f64.exp() - (-10f64).exp()) / 20.0;
    assert!((quad - target_energy).abs() < 0.02 * target_energy, "{quad}");
    // The supergrowing window holds a vanishing fraction of the total.
    let fraction = quad / energy::total_energy(&spec);
    assert!(fraction < 1e-18, "fraction {fraction}");
}
