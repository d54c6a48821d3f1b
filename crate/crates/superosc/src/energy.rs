//! Energy functionals: total energy, cumulative energy E(T) via the shifted
//! series formula, interval energy, and the fractional-energy bound from the
//! minimum logarithmic derivative.
//!
//! A strongly superoscillating/supergrowing interval can hold only a small
//! fraction of the total energy: ΔE/E ≤ Δt / (2 (1 + 3 r²)), where r is a
//! lower bound on |g'/g| over the interval.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::shift::{self, BesselSeries};
use crate::spectrum::LegendreSpectrum;

/// Default grid resolution for the logarithmic-derivative scan.
pub const DEFAULT_RATE_GRID: usize = 200;

/// Default truncation of the shifted series in the E(T) sum.
pub const DEFAULT_TRUNCATION: usize = 40;

/// Fractional-energy accounting for one interval.
///
/// `fraction` = `delta_e`/`total`; whenever `r_min` is a valid lower bound of
/// |g'/g| on the interval, `fraction` ≤ `bound` up to numerical noise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyReport {
    pub total: f64,
    pub interval: (f64, f64),
    pub delta_e: f64,
    pub fraction: f64,
    pub r_min: f64,
    pub bound: f64,
}

/// Total energy ∫|g|² dt = ∫|g̃|² dω = Σ 2 |c_n|² / (2n + 1), exactly from
/// the coefficients.
pub fn total_energy(spectrum: &LegendreSpectrum) -> f64 {
    spectrum
        .coefficients()
        .iter()
        .enumerate()
        .map(|(n, c)| 2.0 * c.norm_sqr() / (2 * n + 1) as f64)
        .sum()
}

/// Cumulative energy E(T) = ∫_{-∞}^{T} |g|² dt through the series
/// E(T) = E/2 - (4/π) Σ Re(γ_n(T) γ*_{n+2p+1}(T)) (-1)^p / (2(2p+1)(n+p+1)),
/// with γ(T) from the shift module and the double sum truncated at
/// n, n+2p+1 < n_trunc. Covering the decayed part of g requires
/// n_trunc ≳ |T| + the input length.
pub fn cumulative_energy(
    spectrum: &LegendreSpectrum,
    t_upper: f64,
    n_trunc: usize,
) -> Result<f64> {
    assert!(
        n_trunc >= spectrum.len(),
        "n_trunc must cover the input coefficients"
    );
    let series = BesselSeries::from_spectrum(spectrum);
    let shifted = shift::shift_coefficients(&series, t_upper, n_trunc)?;
    let gamma = shifted.coefficients();
    let total = total_energy(spectrum);
    let mut cross = 0.0;
    for n in 0..n_trunc {
        let mut p = 0usize;
        loop {
            let m = n + 2 * p + 1;
            if m >= n_trunc {
                break;
            }
            let sign = if p % 2 == 1 { -1.0 } else { 1.0 };
            let weight = sign / (2.0 * (2 * p + 1) as f64 * (n + p + 1) as f64);
            cross += (gamma[n] * gamma[m].conj()).re * weight;
            p += 1;
        }
    }
    Ok(0.5 * total - 4.0 / std::f64::consts::PI * cross)
}

/// Interval energy E(t_i, t_f) = E(t_f) - E(t_i) via the series formula.
///
/// A zero-width interval yields 0; t_i > t_f is an error.
pub fn interval_energy(
    spectrum: &LegendreSpectrum,
    t_i: f64,
    t_f: f64,
    n_trunc: usize,
) -> Result<f64> {
    if t_i > t_f {
        return Err(Error::InvalidInterval {
            lower: t_i,
            upper: t_f,
        });
    }
    if t_i == t_f {
        return Ok(0.0);
    }
    Ok(cumulative_energy(spectrum, t_f, n_trunc)? - cumulative_energy(spectrum, t_i, n_trunc)?)
}

/// Direct quadrature of ∫ |g(t)|² dt over [t_i, t_f], for cross-checking the
/// series route.
pub fn interval_energy_quadrature(spectrum: &LegendreSpectrum, t_i: f64, t_f: f64) -> f64 {
    if t_i >= t_f {
        return 0.0;
    }
    let order =
        crate::basis::suggested_quad_order(spectrum.len().saturating_sub(1), t_f - t_i, 1.0);
    let rule = crate::basis::gauss_legendre(order);
    rule.integrate(t_i, t_f, |t| crate::spectrum::evaluate(spectrum, t).norm_sqr())
}

/// Grid estimate of r = min |γ_1(t')/(3 γ_0(t'))| over [t_i, t_f], computed
/// through the shift module at `grid` uniformly spaced points (endpoints
/// included). This is a lower-bound estimate, not a certified minimum.
///
/// Errors if some grid point sits at a node of g.
pub fn min_log_derivative(
    spectrum: &LegendreSpectrum,
    t_i: f64,
    t_f: f64,
    grid: usize,
) -> Result<f64> {
    assert!(grid >= 2, "grid needs at least two points");
    if t_i > t_f {
        return Err(Error::InvalidInterval {
            lower: t_i,
            upper: t_f,
        });
    }
    let series = BesselSeries::from_spectrum(spectrum);
    let mut r = f64::INFINITY;
    for k in 0..grid {
        let t = t_i + (t_f - t_i) * k as f64 / (grid - 1) as f64;
        let shifted = shift::shift_coefficients(&series, t, 2)?;
        let rate = shift::local_rate_at(&shifted)?;
        r = r.min(rate.value.norm());
    }
    Ok(r)
}

/// The fractional-energy bound Δt / (2 (1 + 3 r²)).
pub fn energy_bound(delta_t: f64, r: f64) -> f64 {
    debug_assert!(delta_t > 0.0 && r >= 0.0);
    delta_t / (2.0 * (1.0 + 3.0 * r * r))
}

/// Assemble the full [`EnergyReport`] for an interval: exact total energy,
/// series-formula ΔE, grid-scanned r and the resulting bound.
pub fn energy_report(
    spectrum: &LegendreSpectrum,
    t_i: f64,
    t_f: f64,
    grid: usize,
    n_trunc: usize,
) -> Result<EnergyReport> {
    if t_i > t_f {
        return Err(Error::InvalidInterval {
            lower: t_i,
            upper: t_f,
        });
    }
    let total = total_energy(spectrum);
    if t_i == t_f {
        return Ok(EnergyReport {
            total,
            interval: (t_i, t_f),
            delta_e: 0.0,
            fraction: 0.0,
            r_min: 0.0,
            bound: 0.0,
        });
    }
    let delta_e = interval_energy(spectrum, t_i, t_f, n_trunc)?;
    let r_min = min_log_derivative(spectrum, t_i, t_f, grid)?;
    Ok(EnergyReport {
        total,
        interval: (t_i, t_f),
        delta_e,
        fraction: delta_e / total,
        r_min,
        bound: energy_bound(t_f - t_i, r_min),
    })
}
