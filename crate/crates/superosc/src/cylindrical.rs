//! Cylindrically symmetric bandlimited functions: Hankel transform pair,
//! Zernike spectra on the unit disk, radial Bessel series, and generalized
//! local rates from the inverted Helmholtz equation.
//!
//! A field bandlimited on the unit disk has h̃(ν) = Σ a_{2n} R_{2n}^0(ν) for
//! ν ∈ [0, 1] (zero outside) and, in real space,
//! h(ρ) = Σ (-1)ⁿ a_{2n} J_{2n+1}(ρ)/ρ.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::basis;
use crate::error::{Error, Result};

/// Complex Zernike coefficients a_{2n} (implicit even orders 0, 2, 4, ...) of
/// a cylindrically symmetric spectrum on the unit disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialSpectrum {
    #[serde(with = "crate::serde_util::complex_vec")]
    coefficients: Vec<Complex64>,
}

impl RadialSpectrum {
    pub fn new(coefficients: Vec<Complex64>) -> Self {
        Self { coefficients }
    }

    pub fn from_real(coefficients: &[f64]) -> Self {
        Self::new(coefficients.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn coefficient(&self, n: usize) -> Complex64 {
        self.coefficients.get(n).copied().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }
}

/// Local growth rate κ and local wave number k of a cylindrically symmetric
/// field, defined by (κ + ik)² = ∇²h / h. `a` and `b` are the real and
/// imaginary parts of ∇²h/h, so κ² - k² = a and 2κk = |b|.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneralizedRate {
    pub kappa: f64,
    pub k: f64,
    pub a: f64,
    pub b: f64,
}

impl GeneralizedRate {
    fn from_helmholtz_ratio(a: f64, b: f64) -> Self {
        let root = a.hypot(b);
        GeneralizedRate {
            kappa: (0.5 * (a + root)).max(0.0).sqrt(),
            k: (0.5 * (root - a)).max(0.0).sqrt(),
            a,
            b,
        }
    }
}

/// Hankel transform h̃(ν) = ∫ ρ h(ρ) J_0(νρ) dρ, truncated at `rho_max`.
///
/// Panel-wise Gauss-Legendre with panels narrower than the J_0 oscillation
/// period; the integrand decays only like ρ^{-1/2}, so band-edge queries need
/// a large `rho_max` (the transform-pair checks use 2000).
pub fn hankel_transform<F: Fn(f64) -> Complex64>(h: F, nu: f64, rho_max: f64) -> Complex64 {
    assert!(rho_max > 0.0, "truncation radius must be positive");
    assert!(nu >= 0.0, "radial frequency must be nonnegative");
    let width = std::f64::consts::PI / (1.0 + nu);
    let panels = (rho_max / width).ceil() as usize;
    let rule = basis::gauss_legendre(16);
    let mut acc = Complex64::default();
    for p in 0..panels {
        let lo = rho_max * p as f64 / panels as f64;
        let hi = rho_max * (p + 1) as f64 / panels as f64;
        acc += rule.integrate_complex(lo, hi, |rho| h(rho) * (rho * basis::bessel_j(0, nu * rho)));
    }
    acc
}

/// Real-space field h(ρ) = Σ (-1)ⁿ a_{2n} J_{2n+1}(ρ)/ρ; the ρ → 0 limit is
/// a_0/2 since J_{2n+1}(ρ)/ρ → δ_{n,0}/2.
pub fn radial_signal(spectrum: &RadialSpectrum, rho: f64) -> Complex64 {
    if spectrum.is_empty() {
        return Complex64::default();
    }
    if rho == 0.0 {
        return spectrum.coefficient(0) * 0.5;
    }
    let j = basis::bessel_j_upto(2 * (spectrum.len() - 1) + 1, rho);
    spectrum
        .coefficients
        .iter()
        .enumerate()
        .map(|(n, &a)| {
            let sign = if n % 2 == 1 { -1.0 } else { 1.0 };
            a * (sign * j[2 * n + 1] / rho)
        })
        .sum()
}

/// Spectrum value h̃(ν) = Σ a_{2n} R_{2n}^0(ν) on the unit disk.
pub fn zernike_spectrum_value(spectrum: &RadialSpectrum, nu: f64) -> Result<Complex64> {
    let mut acc = Complex64::default();
    for (n, &a) in spectrum.coefficients.iter().enumerate() {
        acc += a * basis::zernike_radial(2 * n, nu)?;
    }
    Ok(acc)
}

/// Measured orthogonality normalization ∫ ν R_n^0(ν)² dν on [0, 1] by
/// quadrature.
///
/// The measured diagonal is 1/(2n + 2); some references quote 1/(2n + 1),
/// which direct evaluation contradicts already at n = 0 where the integral
/// is exactly 1/2. Callers that need the constant should use this measured
/// value rather than either literature form.
pub fn zernike_norm_measured(order: usize) -> f64 {
    let rule = basis::gauss_legendre(64 + 4 * order);
    rule.integrate(0.0, 1.0, |nu| {
        let r = basis::zernike_radial(order, nu).expect("nu within [0,1]");
        nu * r * r
    })
}

/// Default finite-difference step for [`generalized_rates`]: 1e-4 · max(1, ρ).
pub fn default_fd_step(rho: f64) -> f64 {
    1e-4 * rho.max(1.0)
}

/// Generalized local rates (κ, k) from (κ + ik)² = ∇²h/h at ρ > 0, with the
/// cylindrical Laplacian ∇² = d²/dρ² + (1/ρ) d/dρ evaluated by central
/// differences of the given step.
///
/// Errors where |h| ≤ 1e-12 (nodes of the field).
pub fn generalized_rates<Fr, Fi>(
    h_re: Fr,
    h_im: Fi,
    rho: f64,
    step: f64,
) -> Result<GeneralizedRate>
where
    Fr: Fn(f64) -> f64,
    Fi: Fn(f64) -> f64,
{
    assert!(rho > 0.0, "generalized rates are defined away from the axis");
    assert!(step > 0.0 && step < rho, "step must be positive and below rho");
    let h = Complex64::new(h_re(rho), h_im(rho));
    if h.norm() <= 1e-12 {
        return Err(Error::Node {
            at: rho,
            magnitude: h.norm(),
        });
    }
    let hp = Complex64::new(h_re(rho + step), h_im(rho + step));
    let hm = Complex64::new(h_re(rho - step), h_im(rho - step));
    let second = (hp - 2.0 * h + hm) / (step * step);
    let first = (hp - hm) / (2.0 * step);
    let laplacian = second + first / rho;
    let ratio = laplacian * h.conj() / h.norm_sqr();
    Ok(GeneralizedRate::from_helmholtz_ratio(ratio.re, ratio.im))
}

/// [`generalized_rates`] for a series-backed field, with ∇²h from analytic
/// Bessel recurrences instead of finite differences (more accurate near
/// nodes of the derivative).
pub fn generalized_rates_series(spectrum: &RadialSpectrum, rho: f64) -> Result<GeneralizedRate> {
    assert!(rho > 0.0, "generalized rates are defined away from the axis");
    let h = radial_signal(spectrum, rho);
    if h.norm() <= 1e-12 {
        return Err(Error::Node {
            at: rho,
            magnitude: h.norm(),
        });
    }
    if spectrum.is_empty() {
        return Err(Error::Node {
            at: rho,
            magnitude: 0.0,
        });
    }
    let top = 2 * (spectrum.len() - 1) + 2;
    let j = basis::bessel_j_upto(top, rho);
    let mut laplacian = Complex64::default();
    for (n, &a) in spectrum.coefficients.iter().enumerate() {
        let m = 2 * n + 1;
        let sign = if n % 2 == 1 { -1.0 } else { 1.0 };
        let jm = j[m];
        let jd = 0.5 * (j[m - 1] - j[m + 1]);
        // ∇²(J_m/ρ) = -2 J_m'/ρ² + (m² + 1) J_m/ρ³ - J_m/ρ
        let lap = -2.0 * jd / (rho * rho) + ((m * m + 1) as f64) * jm / (rho * rho * rho) - jm / rho;
        laplacian += a * (sign * lap);
    }
    let ratio = laplacian * h.conj() / h.norm_sqr();
    Ok(GeneralizedRate::from_helmholtz_ratio(ratio.re, ratio.im))
}
