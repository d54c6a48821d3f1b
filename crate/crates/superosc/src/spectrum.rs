//! Frequency-domain representation: Legendre-coefficient spectra, band
//! rescaling, moments, cumulants, the local-rate prescription and time-domain
//! evaluation.
//!
//! The spectrum g̃(ω) = Σ c_n P_n(ω) acts as a pseudodistribution: its
//! moments Ω_m = ∫ ωᵐ g̃(ω) dω and the derived cumulants can leave the band
//! [-1, 1] because g̃ may be negative or complex, which is exactly what makes
//! superoscillation and supergrowth possible.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::basis;
use crate::error::{Error, Result};

/// Highest cumulant order served by [`cumulant`].
pub const MAX_CUMULANT_ORDER: usize = 8;

/// Absolute threshold on |2 c0| below which rate and cumulant queries error
/// out instead of dividing by a vanishing zeroth moment.
pub const DEGENERACY_THRESHOLD: f64 = 1e-14;

/// Complex Legendre coefficients c_n on [-1, 1], with an optional physical
/// band (Ω_min, Ω_max) in rad/s recording what the unit band was rescaled
/// from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LegendreSpectrum {
    band: Option<(f64, f64)>,
    #[serde(with = "crate::serde_util::complex_vec")]
    coefficients: Vec<Complex64>,
}

impl LegendreSpectrum {
    /// Spectrum on the unit band with the given coefficients.
    pub fn new(coefficients: Vec<Complex64>) -> Self {
        Self {
            band: None,
            coefficients,
        }
    }

    /// Spectrum carrying a physical band; requires Ω_min < Ω_max.
    pub fn with_band(coefficients: Vec<Complex64>, omega_min: f64, omega_max: f64) -> Result<Self> {
        if !(omega_min < omega_max) {
            return Err(Error::InvalidBand {
                min: omega_min,
                max: omega_max,
            });
        }
        Ok(Self {
            band: Some((omega_min, omega_max)),
            coefficients,
        })
    }

    /// Convenience constructor from real coefficients.
    pub fn from_real(coefficients: &[f64]) -> Self {
        Self::new(coefficients.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn band(&self) -> Option<(f64, f64)> {
        self.band
    }

    /// c_n, zero beyond the stored list.
    pub fn coefficient(&self, n: usize) -> Complex64 {
        self.coefficients.get(n).copied().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Spectrum value g̃(ω) = Σ c_n P_n(ω) on the unit band.
    pub fn spectral_value(&self, omega: f64) -> Result<Complex64> {
        let mut acc = Complex64::default();
        for (n, &c) in self.coefficients.iter().enumerate() {
            acc += c * basis::legendre(n, omega)?;
        }
        Ok(acc)
    }

    fn c0_checked(&self) -> Result<Complex64> {
        let c0 = self.coefficient(0);
        let magnitude = 2.0 * c0.norm();
        if magnitude < DEGENERACY_THRESHOLD {
            return Err(Error::DegenerateSpectrum { magnitude });
        }
        Ok(c0)
    }
}

/// Local complex rate z = g'/g at a point, in units of the rescaled time.
///
/// |Im z| > 1 marks superoscillation, |Re z| > 1 marks supergrowth; any
/// complex value is permitted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexRate {
    pub value: Complex64,
}

impl ComplexRate {
    pub fn new(value: Complex64) -> Self {
        Self { value }
    }

    /// Local wavenumber exceeds the band limit.
    pub fn is_superoscillating(&self) -> bool {
        self.value.im.abs() > 1.0
    }

    /// Local growth/decay rate exceeds the band limit.
    pub fn is_supergrowing(&self) -> bool {
        self.value.re.abs() > 1.0
    }
}

/// Map a physical time t on the band [Ω_min, Ω_max] to the rescaled time
/// t' = ΔΩ t / 2 and the carrier phase e^{i (2 Ω̄/ΔΩ) t'} that relates the
/// original f to the unit-band g: g(t') = (2/ΔΩ) f((2/ΔΩ) t') e^{-i(2Ω̄/ΔΩ)t'}.
pub fn rescale_to_unit_band(omega_min: f64, omega_max: f64, t: f64) -> Result<(f64, Complex64)> {
    if !(omega_min < omega_max) {
        return Err(Error::InvalidBand {
            min: omega_min,
            max: omega_max,
        });
    }
    let delta = omega_max - omega_min;
    let mean = 0.5 * (omega_max + omega_min);
    let t_prime = 0.5 * delta * t;
    let phase = Complex64::new(0.0, 2.0 * mean / delta * t_prime).exp();
    Ok((t_prime, phase))
}

/// Time-domain value g(t) = √(2/π) Σ iⁿ c_n j_n(t).
///
/// Sums every provided coefficient; truncation policy belongs to callers.
pub fn evaluate(spectrum: &LegendreSpectrum, t: f64) -> Complex64 {
    if spectrum.is_empty() {
        return Complex64::default();
    }
    let j = basis::spherical_bessel_upto(spectrum.len() - 1, t);
    let mut acc = Complex64::default();
    let mut i_pow = Complex64::new(1.0, 0.0);
    for (n, &c) in spectrum.coefficients().iter().enumerate() {
        acc += i_pow * c * j[n];
        i_pow *= Complex64::i();
    }
    acc * (2.0 / std::f64::consts::PI).sqrt()
}

/// Truncated double power series
/// g(t) = √(2/π) Σ_n c_n (it)ⁿ Σ_{q<q_max} (-t²/2)^q / (q!(2n+2q+1)!!),
/// converging to [`evaluate`] as q_max grows.
pub fn evaluate_taylor(spectrum: &LegendreSpectrum, t: f64, q_max: usize) -> Complex64 {
    assert!(q_max >= 1, "q_max must be positive");
    let it = Complex64::new(0.0, t);
    let mut acc = Complex64::default();
    let mut it_pow = Complex64::new(1.0, 0.0);
    for (n, &c) in spectrum.coefficients().iter().enumerate() {
        // Inner sum with term recursion; the leading term is 1/(2n+1)!!.
        let mut term = 1.0;
        for k in 0..n {
            term /= (2 * k + 3) as f64;
        }
        let mut inner = term;
        for q in 1..q_max {
            term *= -0.5 * t * t / (q as f64 * (2 * n + 2 * q + 1) as f64);
            inner += term;
        }
        acc += c * it_pow * inner;
        it_pow *= it;
    }
    acc * (2.0 / std::f64::consts::PI).sqrt()
}

/// m-th moment Ω_m = ∫ ωᵐ g̃(ω) dω via the closed form
/// Ω_m = Σ_n c_n K_{m,n}; satisfies Ω_m = (-i)ᵐ g⁽ᵐ⁾(0).
pub fn moment(spectrum: &LegendreSpectrum, m: usize) -> Complex64 {
    let mut acc = Complex64::default();
    for (n, &c) in spectrum.coefficients().iter().enumerate() {
        if n > m || (m - n) % 2 == 1 {
            continue;
        }
        acc += c * basis::k_integral_f64(m, n);
    }
    acc
}

/// n-th cumulant of the pseudodistribution, from the normalized moments
/// m_j = Ω_j/Ω_0 via κ_n = m_n - Σ_{k=1}^{n-1} C(n-1, k-1) κ_k m_{n-k}.
///
/// Requires c_0 away from zero and 1 <= n <= [`MAX_CUMULANT_ORDER`].
pub fn cumulant(spectrum: &LegendreSpectrum, n: usize) -> Result<Complex64> {
    if n == 0 || n > MAX_CUMULANT_ORDER {
        return Err(Error::CumulantOrder {
            order: n,
            max: MAX_CUMULANT_ORDER,
        });
    }
    spectrum.c0_checked()?;
    let omega0 = moment(spectrum, 0);
    let normalized: Vec<Complex64> = (0..=n).map(|j| moment(spectrum, j) / omega0).collect();
    let mut kappa = vec![Complex64::default(); n + 1];
    for order in 1..=n {
        let mut value = normalized[order];
        for k in 1..order {
            value -= binomial(order - 1, k - 1) * kappa[k] * normalized[order - k];
        }
        kappa[order] = value;
    }
    Ok(kappa[n])
}

fn binomial(n: usize, k: usize) -> f64 {
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Local complex rate at the origin, z = i c_1 / (3 c_0) = g'(0)/g(0).
pub fn local_rate(spectrum: &LegendreSpectrum) -> Result<ComplexRate> {
    let c0 = spectrum.c0_checked()?;
    let c1 = spectrum.coefficient(1);
    Ok(ComplexRate::new(Complex64::i() * c1 / (3.0 * c0)))
}

/// Spectrum with prescribed local rate z at the origin: c_1 = -3 i z c_0,
/// followed by the given tail c_2, c_3, .... The rate of the result is z
/// regardless of the tail.
pub fn prescribe_rate(z: Complex64, tail: &[Complex64], c0: Complex64) -> Result<LegendreSpectrum> {
    let magnitude = 2.0 * c0.norm();
    if magnitude < DEGENERACY_THRESHOLD {
        return Err(Error::DegenerateSpectrum { magnitude });
    }
    let mut coefficients = Vec::with_capacity(tail.len() + 2);
    coefficients.push(c0);
    coefficients.push(-3.0 * Complex64::i() * z * c0);
    coefficients.extend_from_slice(tail);
    Ok(LegendreSpectrum::new(coefficients))
}

/// First M coefficients whose signal matches e^{ist} at the origin through
/// the first M-1 derivatives: (is)^N = √(2/π) Σ iⁿ c_n j_n^(N)(0).
///
/// The system is triangular (j_n^(N)(0) = 0 for n > N), so the coefficients
/// are solved successively. No convergence claim is made for s > 1; the
/// truncation M is always explicit.
pub fn superoscillate_everywhere(s: f64, m: usize) -> LegendreSpectrum {
    assert!(m >= 1, "at least one coefficient is required");
    let norm = (2.0 / std::f64::consts::PI).sqrt();
    let is = Complex64::new(0.0, s);
    let mut coefficients: Vec<Complex64> = Vec::with_capacity(m);
    for order in 0..m {
        // (is)^order = norm * [sum_{n<order} i^n c_n j_n^(order)(0) + i^order c_order j_order^(order)(0)]
        let mut rhs = is.powu(order as u32);
        let mut i_pow = Complex64::new(1.0, 0.0);
        for (n, &c) in coefficients.iter().enumerate() {
            rhs -= norm * i_pow * c * basis::spherical_bessel_deriv(n, order, 0.0);
            i_pow *= Complex64::i();
        }
        let diag = norm * i_pow * basis::spherical_bessel_deriv(order, order, 0.0);
        coefficients.push(rhs / diag);
    }
    LegendreSpectrum::new(coefficients)
}
