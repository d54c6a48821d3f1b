//! Build a signal that superoscillates at ten times its band limit, then
//! inspect how far the super behavior extends and how much energy it costs.
//!
//! Run with `cargo run --example prescribed_rate`.

use num_complex::Complex64;
use superosc::energy;
use superosc::shift::{self, BesselSeries};
use superosc::spectrum;

fn main() {
    // c_1 = -3 i z c_0 pins the local rate z = 10i at the origin.
    let z = Complex64::new(0.0, 10.0);
    let spec = spectrum::prescribe_rate(z, &[], Complex64::new(1.0, 0.0)).unwrap();
    println!(
        "coefficients: {:?}",
        spec.coefficients().iter().map(|c| (c.re, c.im)).collect::<Vec<_>>()
    );
    println!("rate at origin: {}", spectrum::local_rate(&spec).unwrap().value);

    // Walk outward and watch the local wavenumber fall back under the band.
    let series = BesselSeries::from_spectrum(&spec);
    for k in 0..=8 {
        let t = 0.05 * k as f64;
        let frame = shift::shift_coefficients(&series, t, 2).unwrap();
        let rate = shift::local_rate_at(&frame).unwrap();
        println!(
            "t = {t:.2}: |g'/g| = {:6.3}  superoscillating: {}",
            rate.value.norm(),
            rate.is_superoscillating()
        );
    }

    // The fractional energy in the superoscillating window is bounded by
    // dt / (2 (1 + 3 r^2)).
    let report = energy::energy_report(&spec, -0.05, 0.05, 200, 40).unwrap();
    println!(
        "window [-0.05, 0.05]: fraction {:.3e} <= bound {:.3e} (r = {:.2})",
        report.fraction, report.bound, report.r_min
    );
}
