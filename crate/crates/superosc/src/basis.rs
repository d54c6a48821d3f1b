//! Special functions and quadrature rules used by every other module.
//!
//! Frequency-domain bases live on [-1, 1] (Legendre polynomials P_n, Zernike
//! radial polynomials R_n^0 on the unit disk); their time-domain images are
//! spherical Bessel functions j_n and integer-order Bessel functions J_n.
//! All inner products are evaluated with Gauss-Legendre rules.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Legendre polynomial P_n(x) by the three-term recurrence
/// (n+1) P_{n+1} = (2n+1) x P_n - n P_{n-1}, with P_0 = 1 and P_1 = x.
///
/// Returns a domain error for |x| > 1 + 1e-12; on [-1, 1] the values satisfy
/// |P_n(x)| <= 1.
pub fn legendre(n: usize, x: f64) -> Result<f64> {
    if x.abs() > 1.0 + 1e-12 {
        return Err(Error::Domain {
            name: "legendre",
            value: x,
            domain: "[-1, 1]",
        });
    }
    Ok(legendre_unchecked(n, x))
}

fn legendre_unchecked(n: usize, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = x;
    for k in 1..n {
        let next = ((2 * k + 1) as f64 * x * cur - k as f64 * prev) / (k + 1) as f64;
        prev = cur;
        cur = next;
    }
    cur
}

/// P_n(x) and P'_n(x) in one recurrence pass (used by the quadrature solver).
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    if n == 0 {
        return (1.0, 0.0);
    }
    let mut prev = 1.0;
    let mut cur = x;
    for k in 1..n {
        let next = ((2 * k + 1) as f64 * x * cur - k as f64 * prev) / (k + 1) as f64;
        prev = cur;
        cur = next;
    }
    // P'_n from the lowering identity; |x| = 1 never occurs for interior nodes.
    let deriv = n as f64 * (x * cur - prev) / (x * x - 1.0);
    (cur, deriv)
}

/// Spherical Bessel function j_n(t) of the first kind.
///
/// Regimes: ascending power series for |t| < 0.5, closed forms for n <= 1,
/// upward recurrence for n <= |t| and downward (Miller) recurrence for
/// n > |t|, where the upward direction is unstable.
pub fn spherical_bessel(n: usize, t: f64) -> f64 {
    let v = sph_j_nonneg(n, t.abs());
    if t < 0.0 && n % 2 == 1 {
        -v
    } else {
        v
    }
}

/// All of j_0(t) ... j_{n_max}(t) in one pass.
pub fn spherical_bessel_upto(n_max: usize, t: f64) -> Vec<f64> {
    let x = t.abs();
    let mut out = if x == 0.0 {
        let mut v = vec![0.0; n_max + 1];
        v[0] = 1.0;
        v
    } else if x < 0.5 {
        (0..=n_max).map(|n| sph_series(n, x)).collect()
    } else if (n_max as f64) <= x {
        let mut v = Vec::with_capacity(n_max + 1);
        v.push(x.sin() / x);
        if n_max >= 1 {
            v.push(x.sin() / (x * x) - x.cos() / x);
            for k in 1..n_max {
                let next = (2 * k + 1) as f64 / x * v[k] - v[k - 1];
                v.push(next);
            }
        }
        v
    } else {
        sph_miller_upto(n_max, x)
    };
    if t < 0.0 {
        for (n, v) in out.iter_mut().enumerate() {
            if n % 2 == 1 {
                *v = -*v;
            }
        }
    }
    out
}

fn sph_j_nonneg(n: usize, x: f64) -> f64 {
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    if x < 0.5 {
        return sph_series(n, x);
    }
    match n {
        0 => x.sin() / x,
        1 => x.sin() / (x * x) - x.cos() / x,
        _ if (n as f64) <= x => {
            let mut prev = x.sin() / x;
            let mut cur = x.sin() / (x * x) - x.cos() / x;
            for k in 1..n {
                let next = (2 * k + 1) as f64 / x * cur - prev;
                prev = cur;
                cur = next;
            }
            cur
        }
        _ => sph_miller_upto(n, x)[n],
    }
}

/// Ascending series j_n(x) = x^n/(2n+1)!! * sum_q (-x^2/2)^q / (q! (2n+3)...(2n+2q+1)).
fn sph_series(n: usize, x: f64) -> f64 {
    // Leading factor x^n / (2n+1)!!; underflows harmlessly for large n.
    let mut lead = 1.0;
    for k in 0..n {
        lead *= x / (2 * k + 3) as f64;
    }
    let half_x2 = 0.5 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for q in 1..=30 {
        term *= -half_x2 / (q as f64 * (2 * n + 2 * q + 1) as f64);
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    lead * sum
}

/// Downward Miller recurrence, normalized against the closed-form j_0 (or j_1
/// when x sits near a zero of sin).
fn sph_miller_upto(n_max: usize, x: f64) -> Vec<f64> {
    let margin = ((40.0 * n_max as f64).sqrt().ceil() as usize).max(16);
    let start = n_max + margin;
    let mut out = vec![0.0; n_max + 1];
    let mut upper = 0.0_f64;
    let mut cur = 1e-300_f64;
    for k in (1..=start).rev() {
        let lower = (2 * k + 1) as f64 / x * cur - upper;
        upper = cur;
        cur = lower;
        if k - 1 <= n_max {
            out[k - 1] = cur;
        }
        if cur.abs() > 1e250 {
            let scale = 1e-250;
            cur *= scale;
            upper *= scale;
            for v in out.iter_mut() {
                *v *= scale;
            }
        }
    }
    let j0 = x.sin() / x;
    let j1 = x.sin() / (x * x) - x.cos() / x;
    let scale = if j0.abs() >= j1.abs() {
        j0 / out[0]
    } else if n_max >= 1 {
        j1 / out[1]
    } else {
        j0 / out[0]
    };
    for v in out.iter_mut() {
        *v *= scale;
    }
    out
}

/// m-th derivative of j_n at t.
///
/// The identity n j_{n-1} - (n+1) j_{n+1} = (2n+1) j_n' is applied m times
/// symbolically, producing a small coefficient table over {j_k}; the table is
/// then evaluated with `spherical_bessel_upto`.
pub fn spherical_bessel_deriv(n: usize, m: usize, t: f64) -> f64 {
    if m == 0 {
        return spherical_bessel(n, t);
    }
    let table = sph_deriv_table(n, m);
    let k_max = table.keys().copied().max().unwrap_or(0);
    let j = spherical_bessel_upto(k_max, t);
    table.iter().map(|(&k, &c)| c * j[k]).sum()
}

fn sph_deriv_table(n: usize, m: usize) -> BTreeMap<usize, f64> {
    let mut cur = BTreeMap::from([(n, 1.0_f64)]);
    for _ in 0..m {
        let mut next: BTreeMap<usize, f64> = BTreeMap::new();
        for (&k, &c) in &cur {
            if k == 0 {
                *next.entry(1).or_insert(0.0) -= c;
            } else {
                let denom = (2 * k + 1) as f64;
                *next.entry(k - 1).or_insert(0.0) += c * k as f64 / denom;
                *next.entry(k + 1).or_insert(0.0) -= c * (k + 1) as f64 / denom;
            }
        }
        cur = next;
    }
    cur
}

/// Integer-order Bessel function of the first kind J_n(x) for x >= 0.
///
/// Power series below x = 12, Hankel asymptotic expansion above for the
/// n <= 1 seeds, upward recurrence for n <= x and normalized downward
/// recurrence for n > x.
pub fn bessel_j(n: usize, x: f64) -> f64 {
    debug_assert!(x >= 0.0, "bessel_j expects x >= 0");
    let x = x.abs();
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    match n {
        0 => bessel_j01(0, x),
        1 => bessel_j01(1, x),
        _ if (n as f64) <= x => {
            let mut prev = bessel_j01(0, x);
            let mut cur = bessel_j01(1, x);
            for k in 1..n {
                let next = 2.0 * k as f64 / x * cur - prev;
                prev = cur;
                cur = next;
            }
            cur
        }
        _ => bessel_miller(n, x),
    }
}

/// J_0 ... J_{n_max} at x >= 0 in one pass.
pub fn bessel_j_upto(n_max: usize, x: f64) -> Vec<f64> {
    if x == 0.0 {
        let mut v = vec![0.0; n_max + 1];
        v[0] = 1.0;
        return v;
    }
    if (n_max as f64) <= x || n_max <= 1 {
        let mut v = Vec::with_capacity(n_max + 1);
        v.push(bessel_j01(0, x));
        if n_max >= 1 {
            v.push(bessel_j01(1, x));
            for k in 1..n_max {
                let next = 2.0 * k as f64 / x * v[k] - v[k - 1];
                v.push(next);
            }
        }
        v
    } else {
        bessel_miller_upto(n_max, x)
    }
}

fn bessel_j01(n: usize, x: f64) -> f64 {
    if x <= 12.0 {
        // Ascending series J_n(x) = sum_k (-1)^k (x/2)^{n+2k} / (k! (n+k)!).
        let half = 0.5 * x;
        let mut term = if n == 0 { 1.0 } else { half };
        let mut sum = term;
        let quarter_x2 = half * half;
        for k in 1..=40 {
            term *= -quarter_x2 / (k as f64 * (k + n) as f64);
            sum += term;
            if term.abs() < 1e-18 * sum.abs() {
                break;
            }
        }
        sum
    } else {
        bessel_asymptotic(n, x)
    }
}

/// Hankel's asymptotic expansion, adequate to ~1e-12 for x > 12 and n <= 1.
fn bessel_asymptotic(n: usize, x: f64) -> f64 {
    let mu = 4.0 * (n * n) as f64;
    let inv8x = 1.0 / (8.0 * x);
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0_f64;
    let mut prev_abs = f64::INFINITY;
    for k in 1..=20 {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) * inv8x / k as f64;
        if term.abs() >= prev_abs {
            break;
        }
        prev_abs = term.abs();
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if term.abs() < 1e-17 {
            break;
        }
    }
    let chi = x - (2 * n + 1) as f64 * std::f64::consts::FRAC_PI_4;
    (2.0 / (std::f64::consts::PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// Downward recurrence with the normalization J_0 + 2 sum_k J_{2k} = 1.
fn bessel_miller(n: usize, x: f64) -> f64 {
    bessel_miller_upto(n, x)[n]
}

fn bessel_miller_upto(n_max: usize, x: f64) -> Vec<f64> {
    let margin = ((40.0 * n_max as f64).sqrt().ceil() as usize).max(16);
    let mut start = n_max.max(x.ceil() as usize) + margin;
    if start % 2 == 1 {
        start += 1;
    }
    let mut out = vec![0.0; n_max + 1];
    let mut upper = 0.0_f64;
    let mut cur = 1e-300_f64;
    let mut norm = 0.0_f64;
    for k in (1..=start).rev() {
        let lower = 2.0 * k as f64 / x * cur - upper;
        upper = cur;
        cur = lower;
        if (k - 1) % 2 == 0 {
            norm += if k - 1 == 0 { cur } else { 2.0 * cur };
        }
        if k - 1 <= n_max {
            out[k - 1] = cur;
        }
        if cur.abs() > 1e250 {
            let scale = 1e-250;
            cur *= scale;
            upper *= scale;
            norm *= scale;
            for v in out.iter_mut() {
                *v *= scale;
            }
        }
    }
    for v in out.iter_mut() {
        *v /= norm;
    }
    out
}

/// Zernike radial polynomial R_n^0(nu) for even order n on [0, 1].
///
/// Evaluated through the closed form R_{2m}^0(nu) = P_m(2 nu^2 - 1); the
/// defining alternating factorial sum cancels catastrophically beyond order
/// ~20 and is kept as a test oracle only. Odd orders are identically zero.
pub fn zernike_radial(order: usize, nu: f64) -> Result<f64> {
    if !(-1e-12..=1.0 + 1e-12).contains(&nu) {
        return Err(Error::Domain {
            name: "zernike_radial",
            value: nu,
            domain: "[0, 1]",
        });
    }
    if order % 2 == 1 {
        return Ok(0.0);
    }
    Ok(legendre_unchecked(order / 2, 2.0 * nu * nu - 1.0))
}

/// K_{m,n} = integral over [-1,1] of omega^m P_n(omega) d omega, exactly.
///
/// Zero for n > m and for odd m - n; otherwise
/// K_{m,n} = 2 m! / (2^{(m-n)/2} ((m-n)/2)! (m+n+1)!!). Exact rationals avoid
/// double-factorial overflow for large m; convert with [`k_integral_f64`].
pub fn k_integral(m: usize, n: usize) -> BigRational {
    if n > m || (m - n) % 2 == 1 {
        return BigRational::zero();
    }
    let p = (m - n) / 2;
    let numer = BigInt::from(2) * factorial(m);
    let denom = BigInt::from(2).pow(p as u32) * factorial(p) * double_factorial(m + n + 1);
    BigRational::new(numer, denom)
}

/// K_{m,n} rounded to f64.
pub fn k_integral_f64(m: usize, n: usize) -> f64 {
    ratio_to_f64(&k_integral(m, n))
}

fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

fn double_factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    acc
}

/// Lossless-enough BigRational -> f64 (values here are all moderate).
fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back to a scaled division when numerator/denominator overflow f64.
        let digits = r.denom().abs().to_string().len() as i32 - 15;
        let scale = BigInt::from(10).pow(digits.max(0) as u32);
        let num = (r.numer() * &scale / r.denom()).to_f64().unwrap_or(0.0);
        num / 10f64.powi(digits.max(0))
    })
}

/// Gauss-Legendre quadrature rule on the reference interval [-1, 1].
///
/// Nodes are strictly increasing, weights positive and summing to 2; the rule
/// integrates polynomials up to degree 2 order - 1 exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    order: usize,
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Integrate f over [a, b] by affine transformation of the rule.
    pub fn integrate<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let sum: f64 = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum();
        half * sum
    }

    /// Complex-valued counterpart of [`integrate`](Self::integrate).
    pub fn integrate_complex<F: Fn(f64) -> Complex64>(&self, a: f64, b: f64, f: F) -> Complex64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let sum: Complex64 = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| f(mid + half * x) * w)
            .sum();
        sum * half
    }
}

/// Gauss-Legendre rule of the given order, computed by Newton iteration on
/// P_n and cached for reuse (Gram assembly and the orthogonality suites ask
/// for the same large orders repeatedly).
pub fn gauss_legendre(order: usize) -> Arc<QuadratureRule> {
    assert!(order >= 1, "quadrature order must be positive");
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<QuadratureRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(rule) = cache.lock().unwrap().get(&order) {
        return rule.clone();
    }
    let rule = Arc::new(compute_gauss_legendre(order));
    cache.lock().unwrap().insert(order, rule.clone());
    rule
}

fn compute_gauss_legendre(order: usize) -> QuadratureRule {
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Tricomi-style initial guess, then Newton.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, deriv) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * deriv * deriv);
        // Initial guesses walk from +1 downwards.
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = w;
        nodes[i] = -x;
        weights[i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    QuadratureRule {
        nodes,
        weights,
        order,
    }
}

/// Default node-count heuristic: 50 + 10 * (max basis index) + ceil(4 * interval
/// length * max frequency). Integrands here are polynomials times oscillations,
/// so the oscillation scale sets the required resolution.
pub fn suggested_quad_order(max_basis_index: usize, interval_len: f64, max_frequency: f64) -> usize {
    50 + 10 * max_basis_index + (4.0 * interval_len.abs() * max_frequency).ceil() as usize
}
