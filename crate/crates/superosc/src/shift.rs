//! Expansions about arbitrary origins: shifted coefficients γ_n(t'),
//! spherical-Bessel correlation functions I_{m,n}, frame transforms, the
//! coefficient recurrence and local rates away from the origin.
//!
//! The transfer kernel between frames is I_{m,n}(t) = ∫ j_m(s+t) j_n(s) ds.
//! Each I_{m,n} is a finite combination of spherical Bessel functions with
//! rational coefficients, derived once from the base cases
//! I_{0,n} = π(-1)ⁿ j_n and I_{1,n} = π(-1)^{n+1} j_n' together with the
//! recurrence I_{m+1,n} = m/(m+1) I_{m-1,n} - (2m+1)/(m+1) I_{m,n}'; the j'
//! terms are reduced with n j_{n-1} - (n+1) j_{n+1} = (2n+1) j_n'. The tables
//! are built lazily and cached for concurrent readers.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num::rational::BigRational;
use num::traits::{One, ToPrimitive, Zero};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::basis;
use crate::error::{Error, Result};
use crate::spectrum::{ComplexRate, LegendreSpectrum};

/// Complex coefficients γ_n anchored at an expansion origin t', representing
/// g(t) = √(2/π) Σ γ_n(t') j_n(t - t').
///
/// At the origin 0 the coefficients relate to a Legendre spectrum by
/// γ_n(0) = iⁿ c_n, and γ_0(t') = √(π/2) g(t') in any frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BesselSeries {
    origin: f64,
    #[serde(with = "crate::serde_util::complex_vec")]
    coefficients: Vec<Complex64>,
}

impl BesselSeries {
    pub fn new(origin: f64, coefficients: Vec<Complex64>) -> Self {
        Self {
            origin,
            coefficients,
        }
    }

    /// Origin-0 series of a Legendre spectrum: γ_n(0) = iⁿ c_n.
    pub fn from_spectrum(spectrum: &LegendreSpectrum) -> Self {
        let mut i_pow = Complex64::new(1.0, 0.0);
        let coefficients = spectrum
            .coefficients()
            .iter()
            .map(|&c| {
                let g = i_pow * c;
                i_pow *= Complex64::i();
                g
            })
            .collect();
        Self {
            origin: 0.0,
            coefficients,
        }
    }

    pub fn origin(&self) -> f64 {
        self.origin
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

    /// g(t) = √(2/π) Σ γ_n j_n(t - t').
    pub fn evaluate(&self, t: f64) -> Complex64 {
        if self.is_empty() {
            return Complex64::default();
        }
        let j = basis::spherical_bessel_upto(self.len() - 1, t - self.origin);
        let sum: Complex64 = self
            .coefficients
            .iter()
            .zip(&j)
            .map(|(&g, &jv)| g * jv)
            .sum();
        sum * (2.0 / std::f64::consts::PI).sqrt()
    }
}

/// Reduction of d/dt over a {j_k} coefficient table.
fn differentiate(table: &BTreeMap<usize, BigRational>) -> BTreeMap<usize, BigRational> {
    let mut out: BTreeMap<usize, BigRational> = BTreeMap::new();
    for (&k, c) in table {
        if k == 0 {
            *out.entry(1).or_insert_with(BigRational::zero) -= c;
        } else {
            let denom = BigRational::from_integer((2 * k as i64 + 1).into());
            let low = c * BigRational::from_integer((k as i64).into()) / &denom;
            let high = c * BigRational::from_integer((k as i64 + 1).into()) / &denom;
            *out.entry(k - 1).or_insert_with(BigRational::zero) += low;
            *out.entry(k + 1).or_insert_with(BigRational::zero) -= high;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Coefficient table of Ĩ_{m,n} = I_{m,n}/π over {j_k}; built lazily under a
/// write lock, served to concurrent readers thereafter.
type FrozenTable = Arc<Vec<(usize, f64)>>;

fn i_table(m: usize, n: usize) -> FrozenTable {
    static CACHE: OnceLock<RwLock<HashMap<(usize, usize), FrozenTable>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(t) = cache.read().unwrap().get(&(m, n)) {
        return t.clone();
    }

    // Build Ĩ_{0,n} .. Ĩ_{m,n} by the recurrence on the first index.
    let sign = |odd: bool| {
        if odd {
            -BigRational::one()
        } else {
            BigRational::one()
        }
    };
    let mut prev: BTreeMap<usize, BigRational> = BTreeMap::from([(n, sign(n % 2 == 1))]);
    let mut tables: Vec<BTreeMap<usize, BigRational>> = vec![prev.clone()];
    if m >= 1 {
        let base1 = {
            let mut d = differentiate(&BTreeMap::from([(n, BigRational::one())]));
            let s = sign(n.is_multiple_of(2));
            for c in d.values_mut() {
                *c *= &s;
            }
            d
        };
        tables.push(base1.clone());
        let mut cur = base1;
        for k in 1..m {
            // Ĩ_{k+1,n} = k/(k+1) Ĩ_{k-1,n} - (2k+1)/(k+1) Ĩ_{k,n}'
            let a = BigRational::new((k as i64).into(), (k as i64 + 1).into());
            let b = BigRational::new((2 * k as i64 + 1).into(), (k as i64 + 1).into());
            let d = differentiate(&cur);
            let mut next: BTreeMap<usize, BigRational> = BTreeMap::new();
            for (&key, c) in &prev {
                *next.entry(key).or_insert_with(BigRational::zero) += c * &a;
            }
            for (&key, c) in &d {
                *next.entry(key).or_insert_with(BigRational::zero) -= c * &b;
            }
            next.retain(|_, c| !c.is_zero());
            prev = cur;
            cur = next;
            tables.push(cur.clone());
        }
    }

    let mut guard = cache.write().unwrap();
    let mut result = None;
    for (idx, table) in tables.into_iter().enumerate() {
        let frozen: Arc<Vec<(usize, f64)>> = Arc::new(
            table
                .into_iter()
                .map(|(k, c)| (k, c.to_f64().expect("I-table coefficient fits in f64")))
                .collect(),
        );
        if idx == m {
            result = Some(frozen.clone());
        }
        guard.entry((idx, n)).or_insert(frozen);
    }
    result.expect("requested table was built")
}

/// Correlation function I_{m,n}(t) = ∫ j_m(s+t) j_n(s) ds, built from the
/// base cases and the first-index recurrence for the given index order (the
/// symmetry I_{m,n}(t) = I_{n,m}(-t) is left as a checkable property, not a
/// shortcut).
pub fn correlation(m: usize, n: usize, t: f64) -> f64 {
    let table = i_table(m, n);
    let k_max = table.iter().map(|&(k, _)| k).max().unwrap_or(0);
    let j = basis::spherical_bessel_upto(k_max, t);
    let sum: f64 = table.iter().map(|&(k, c)| c * j[k]).sum();
    std::f64::consts::PI * sum
}

/// First `n_out` coefficients of the series re-anchored at t':
/// γ_m(t') = (2m+1)/π Σ_p γ_p(0) I_{p,m}(t').
///
/// Exact (finite sum) for a finite input series; requires origin 0.
pub fn shift_coefficients(
    series: &BesselSeries,
    t_prime: f64,
    n_out: usize,
) -> Result<BesselSeries> {
    if series.origin != 0.0 {
        return Err(Error::WrongOrigin {
            actual: series.origin,
        });
    }
    assert!(n_out >= 1, "n_out must be positive");
    if series.is_empty() {
        return Ok(BesselSeries::new(t_prime, vec![Complex64::default(); n_out]));
    }
    let p_max = series.len() - 1;
    let j = basis::spherical_bessel_upto(n_out - 1 + p_max, t_prime);
    let mut out = Vec::with_capacity(n_out);
    for m in 0..n_out {
        let mut acc = Complex64::default();
        for (p, &g) in series.coefficients.iter().enumerate() {
            if g == Complex64::default() {
                continue;
            }
            // I_{p,m}(t') with the recurrence depth kept at min(p, m).
            let value = if p <= m {
                i_table(p, m).iter().map(|&(k, c)| c * j[k]).sum::<f64>()
            } else {
                let table = i_table(m, p);
                let k_max = table.iter().map(|&(k, _)| k).max().unwrap_or(0);
                let jm = basis::spherical_bessel_upto(k_max, -t_prime);
                table.iter().map(|&(k, c)| c * jm[k]).sum::<f64>()
            };
            acc += g * value;
        }
        out.push(acc * (2 * m + 1) as f64);
    }
    Ok(BesselSeries::new(t_prime, out))
}

/// First `n_out` origin-0 coefficients recovered from a shifted frame:
/// γ_p(0) = (2p+1)/π Σ_m γ_m(t') I_{p,m}(t').
///
/// Approximate inverse of [`shift_coefficients`] under truncation of the
/// shifted series.
pub fn unshift_coefficients(series: &BesselSeries, n_out: usize) -> BesselSeries {
    assert!(n_out >= 1, "n_out must be positive");
    let t_prime = series.origin;
    if series.is_empty() {
        return BesselSeries::new(0.0, vec![Complex64::default(); n_out]);
    }
    let m_max = series.len() - 1;
    let j = basis::spherical_bessel_upto(n_out - 1 + m_max, t_prime);
    let mut out = Vec::with_capacity(n_out);
    for p in 0..n_out {
        let mut acc = Complex64::default();
        for (m, &g) in series.coefficients.iter().enumerate() {
            if g == Complex64::default() {
                continue;
            }
            let value = if p <= m {
                i_table(p, m).iter().map(|&(k, c)| c * j[k]).sum::<f64>()
            } else {
                let table = i_table(m, p);
                let k_max = table.iter().map(|&(k, _)| k).max().unwrap_or(0);
                let jm = basis::spherical_bessel_upto(k_max, -t_prime);
                table.iter().map(|&(k, c)| c * jm[k]).sum::<f64>()
            };
            acc += g * value;
        }
        out.push(acc * (2 * p + 1) as f64);
    }
    BesselSeries::new(0.0, out)
}

/// Default shift/unshift truncation: 4 × input length + 20, fixed by the
/// round-trip convergence study in the acceptance tests.
pub fn default_shift_truncation(input_len: usize) -> usize {
    4 * input_len + 20
}

/// Default central-difference step for [`check_recurrence`].
pub const DEFAULT_RECURRENCE_STEP: f64 = 1e-4;

/// Logarithmic derivative of g at the series origin:
/// g'(t')/g(t') = γ_1(t')/(3 γ_0(t')).
///
/// Errors at nodes of g (|γ_0| below 1e-14).
pub fn local_rate_at(series: &BesselSeries) -> Result<ComplexRate> {
    let g0 = series.coefficient(0);
    if g0.norm() <= 1e-14 {
        return Err(Error::Node {
            at: series.origin,
            magnitude: g0.norm(),
        });
    }
    Ok(ComplexRate::new(series.coefficient(1) / (3.0 * g0)))
}

/// Maximum residual of the frame recurrence
/// γ_{n+1}(t') = (2n+3)/(n+1) (γ_n'(t') + n/(2n-1) γ_{n-1}(t'))
/// over all n the provided series length supports, with γ_n' from central
/// differences of step h. Near zero for any valid single-variable bandlimited
/// representation.
pub fn check_recurrence<F: Fn(f64) -> BesselSeries>(gammas: F, t_prime: f64, h: f64) -> f64 {
    assert!(h > 0.0, "finite-difference step must be positive");
    let center = gammas(t_prime);
    let plus = gammas(t_prime + h);
    let minus = gammas(t_prime - h);
    let len = center.len().min(plus.len()).min(minus.len());
    let mut worst = 0.0_f64;
    for n in 0..len.saturating_sub(1) {
        let deriv = (plus.coefficient(n) - minus.coefficient(n)) / (2.0 * h);
        let prev_term = if n == 0 {
            Complex64::default()
        } else {
            center.coefficient(n - 1) * (n as f64 / (2.0 * n as f64 - 1.0))
        };
        let predicted = (deriv + prev_term) * ((2 * n + 3) as f64 / (n + 1) as f64);
        let residual = (center.coefficient(n + 1) - predicted).norm();
        worst = worst.max(residual);
    }
    worst
}

/// Truncated Maclaurin evaluation of the n-th derivative at t':
/// g⁽ⁿ⁾(t') = Σ_m (t'^m/m!) i^{n+m} Ω_{n+m} / √(2π).
pub fn derivative_series(
    spectrum: &LegendreSpectrum,
    n: usize,
    t_prime: f64,
    terms: usize,
) -> Complex64 {
    assert!(terms >= 1, "at least one term is required");
    let tau = (2.0 * std::f64::consts::PI).sqrt();
    let mut acc = Complex64::default();
    let mut t_pow_over_fact = 1.0;
    let mut i_pow = Complex64::i().powu(n as u32);
    for m in 0..terms {
        acc += i_pow * crate::spectrum::moment(spectrum, n + m) * t_pow_over_fact;
        t_pow_over_fact *= t_prime / (m + 1) as f64;
        i_pow *= Complex64::i();
    }
    acc / tau
}
