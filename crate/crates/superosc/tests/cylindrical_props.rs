//! Cylindrical invariants outside the acceptance suite: the Hankel image of
//! the lowest basis member, analytic-vs-finite-difference Laplacians, and
//! the radial fit's generalized rate.

mod common;

use num_complex::Complex64;
use superosc::basis;
use superosc::cylindrical::{self, RadialSpectrum};

/// h = J_1(ρ)/ρ transforms to the indicator of the unit disk: h̃ ≈ 1 inside,
/// ≈ 0 outside (with rho_max = 2000 the truncation ripple sits below 2e-3).
#[test]
fn hankel_of_lowest_mode_is_disk_indicator() {
    let h = |rho: f64| Complex64::new(basis::bessel_j(1, rho) / rho, 0.0);
    for &nu in &[0.2, 0.5, 0.8] {
        let value = cylindrical::hankel_transform(h, nu, 2000.0);
        assert!(
            (value.re - 1.0).abs() < 2e-3 && value.im.abs() < 1e-10,
            "nu={nu}: {value}"
        );
    }
    for &nu in &[1.3, 2.0] {
        let value = cylindrical::hankel_transform(h, nu, 2000.0);
        assert!(value.norm() < 2e-3, "nu={nu}: {value}");
    }
}

/// The second basis member round-trips through the transform pair.
#[test]
fn hankel_of_second_mode_matches_zernike() {
    let spec = RadialSpectrum::from_real(&[0.0, 1.0]);
    let h = |rho: f64| cylindrical::radial_signal(&spec, rho);
    for &nu in &[0.15, 0.45, 0.75] {
        let value = cylindrical::hankel_transform(h, nu, 2000.0);
        let expected = cylindrical::zernike_spectrum_value(&spec, nu).unwrap();
        assert!(
            (value - expected).norm() < 2e-3,
            "nu={nu}: {value} vs {expected}"
        );
    }
}

/// Analytic e^{10iρ}/√ρ probe: local wavenumber 10 within 2%, with the
/// exact ∇²h/h = -k² + 1/(4ρ²) as the oracle for the ratio itself.
#[test]
fn outgoing_wave_probe() {
    let k = 10.0;
    let rate = cylindrical::generalized_rates(
        |rho: f64| (k * rho).cos() / rho.sqrt(),
        |rho: f64| (k * rho).sin() / rho.sqrt(),
        2.0,
        cylindrical::default_fd_step(2.0),
    )
    .unwrap();
    let expected_ratio = -k * k + 1.0 / (4.0 * 4.0);
    assert!((rate.k - k).abs() <= 0.02 * k, "k = {}", rate.k);
    assert!(rate.kappa.abs() < 0.3, "kappa = {}", rate.kappa);
    assert!((rate.a - expected_ratio).abs() < 0.05);
}

/// The supergrowing radial fit carries its growth rate: κ ≈ 10 at ρ = 1.
#[test]
fn radial_supergrowing_fit_rate() {
    let fit = superosc::fit::approximate_radial(
        &superosc::fit::TargetFunction::RadialExponential(10.0),
        0.5,
        1.5,
        10,
        1e-12,
    )
    .unwrap();
    let spec = RadialSpectrum::new(fit.coefficients.clone());
    let rate = cylindrical::generalized_rates_series(&spec, 1.0).unwrap();
    assert!((rate.kappa - 10.0).abs() < 0.5, "kappa = {}", rate.kappa);
    assert!(rate.k < 0.5, "k = {}", rate.k);
}

/// Hankel transform of the zero function and of a narrow truncation agree
/// with direct Simpson quadrature.
#[test]
fn hankel_matches_simpson_on_short_range() {
    let spec = RadialSpectrum::from_real(&[1.0, -0.3]);
    let h = |rho: f64| cylindrical::radial_signal(&spec, rho);
    for &nu in &[0.3, 0.9, 1.7] {
        let panel = cylindrical::hankel_transform(h, nu, 60.0);
        let oracle = common::simpson_complex(
            |rho| {
                if rho == 0.0 {
                    Complex64::default()
                } else {
                    h(rho) * rho * basis::bessel_j(0, nu * rho)
                }
            },
            0.0,
            60.0,
            120_000,
        );
        assert!((panel - oracle).norm() < 1e-9, "nu={nu}: {panel} vs {oracle}");
    }
}
