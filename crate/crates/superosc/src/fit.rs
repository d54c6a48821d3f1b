//! Least-squares approximation of a target function on a finite interval in
//! three geometries: spherical-Bessel basis on the line, periodic exponential
//! basis, and odd-order Bessel basis for cylindrically symmetric functions.
//!
//! Each geometry assembles a Gram matrix of basis overlaps and a load vector
//! of target overlaps, then solves the normal equations with a truncated-SVD
//! Moore-Penrose pseudo-inverse; basis overlaps on short intervals can be
//! near zero, so the Gram matrices are routinely ill-conditioned.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::basis;
use crate::error::{Error, Result};

/// A fit target: a builtin analytic form or tabulated samples.
#[derive(Debug, Clone, PartialEq)]
pub enum TargetFunction {
    /// cos(a t)
    Cosine(f64),
    /// e^{a t}
    Exponential(f64),
    /// e^{i s t}
    ComplexExponential(f64),
    /// Θ(t - t0)
    UnitStep(f64),
    /// cos(a ρ)/√ρ
    RadialCosine(f64),
    /// e^{a ρ}/√ρ
    RadialExponential(f64),
    /// Samples interpolated linearly; clamped to the end values outside the
    /// tabulated range.
    Tabulated(Vec<(f64, Complex64)>),
}

impl TargetFunction {
    /// Tabulated target; requires at least two samples with strictly
    /// increasing coordinates.
    pub fn tabulated(samples: Vec<(f64, Complex64)>) -> Result<Self> {
        if samples.len() < 2 || samples.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidTable);
        }
        Ok(Self::Tabulated(samples))
    }

    pub fn evaluate(&self, x: f64) -> Complex64 {
        match self {
            Self::Cosine(a) => Complex64::new((a * x).cos(), 0.0),
            Self::Exponential(a) => Complex64::new((a * x).exp(), 0.0),
            Self::ComplexExponential(s) => Complex64::new(0.0, s * x).exp(),
            Self::UnitStep(t0) => Complex64::new(if x < *t0 { 0.0 } else { 1.0 }, 0.0),
            Self::RadialCosine(a) => Complex64::new((a * x).cos() / x.sqrt(), 0.0),
            Self::RadialExponential(a) => Complex64::new((a * x).exp() / x.sqrt(), 0.0),
            Self::Tabulated(samples) => interp_linear(samples, x),
        }
    }

    /// Location of a jump inside the fit interval, if any; quadrature splits
    /// there instead of integrating across the discontinuity.
    pub fn discontinuity(&self) -> Option<f64> {
        match self {
            Self::UnitStep(t0) => Some(*t0),
            _ => None,
        }
    }

    /// Dominant oscillation/growth rate, used by the quadrature node-count
    /// heuristic.
    pub fn oscillation_scale(&self) -> f64 {
        match self {
            Self::Cosine(a)
            | Self::Exponential(a)
            | Self::ComplexExponential(a)
            | Self::RadialCosine(a)
            | Self::RadialExponential(a) => a.abs(),
            Self::UnitStep(_) | Self::Tabulated(_) => 0.0,
        }
    }

    fn check_coverage(&self, lower: f64, upper: f64) -> Result<()> {
        if let Self::Tabulated(samples) = self {
            let have_lower = samples.first().map(|s| s.0).unwrap_or(f64::NAN);
            let have_upper = samples.last().map(|s| s.0).unwrap_or(f64::NAN);
            if have_lower > lower + 1e-12 || have_upper < upper - 1e-12 {
                return Err(Error::Coverage {
                    lower,
                    upper,
                    have_lower,
                    have_upper,
                });
            }
        }
        Ok(())
    }
}

fn interp_linear(samples: &[(f64, Complex64)], x: f64) -> Complex64 {
    if x <= samples[0].0 {
        return samples[0].1;
    }
    if x >= samples[samples.len() - 1].0 {
        return samples[samples.len() - 1].1;
    }
    let idx = samples.partition_point(|s| s.0 <= x);
    let (x0, y0) = samples[idx - 1];
    let (x1, y1) = samples[idx];
    let w = (x - x0) / (x1 - x0);
    y0 * (1.0 - w) + y1 * w
}

/// Fit geometry tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Geometry {
    Line,
    Periodic,
    Radial,
}

/// Solved coefficients with conditioning diagnostics.
///
/// `coefficients` are the γ_n (line), C_n (periodic) or a_{2n} (radial)
/// depending on `geometry`; `residual_l2` is the square root of the
/// quadrature-evaluated error functional. `gram_condition` and `svd_rank`
/// describe the system actually inverted: the diagonally equilibrated Gram
/// matrix for the line and radial geometries, the closed-form α matrix for
/// the periodic one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub geometry: Geometry,
    pub interval: (f64, f64),
    #[serde(with = "crate::serde_util::complex_vec")]
    pub coefficients: Vec<Complex64>,
    pub residual_l2: f64,
    pub gram_condition: f64,
    pub svd_rank: usize,
}

impl FitResult {
    /// Value of the fitted approximant at x.
    pub fn evaluate(&self, x: f64) -> Complex64 {
        evaluate_basis_sum(self.geometry, &self.coefficients, x)
    }
}

/// Basis frequencies ω_k = (1 - 2k/N) 2π, k = 0..N, of the periodic fit with
/// parameter N (basis size N + 1). N = 0 degenerates to the single carrier 2π.
pub fn periodic_frequencies(n: usize) -> Vec<f64> {
    let tau = 2.0 * std::f64::consts::PI;
    if n == 0 {
        return vec![tau];
    }
    (0..=n)
        .map(|k| (1.0 - 2.0 * k as f64 / n as f64) * tau)
        .collect()
}

fn evaluate_basis_sum(geometry: Geometry, coefficients: &[Complex64], x: f64) -> Complex64 {
    match geometry {
        Geometry::Line => {
            if coefficients.is_empty() {
                return Complex64::default();
            }
            let j = basis::spherical_bessel_upto(coefficients.len() - 1, x);
            let sum: Complex64 = coefficients.iter().zip(&j).map(|(&c, &jv)| c * jv).sum();
            sum * (2.0 / std::f64::consts::PI).sqrt()
        }
        Geometry::Periodic => {
            let n = coefficients.len().saturating_sub(1);
            periodic_frequencies(n)
                .iter()
                .zip(coefficients)
                .map(|(&w, &c)| c * Complex64::new(0.0, w * x).exp())
                .sum()
        }
        Geometry::Radial => {
            if coefficients.is_empty() {
                return Complex64::default();
            }
            if x == 0.0 {
                // J_{2n+1}(ρ)/ρ -> δ_{n,0}/2 as ρ -> 0.
                return coefficients[0] * 0.5;
            }
            let j = basis::bessel_j_upto(2 * (coefficients.len() - 1) + 1, x);
            coefficients
                .iter()
                .enumerate()
                .map(|(n, &a)| {
                    let sign = if n % 2 == 1 { -1.0 } else { 1.0 };
                    a * (sign * j[2 * n + 1] / x)
                })
                .sum()
        }
    }
}

/// Gram matrix A_{nm} = ∫ j_n(t) j_m(t) dt over [t_i, t_f] by Gauss-Legendre
/// quadrature with the default node heuristic.
pub fn gram_bessel(t_i: f64, t_f: f64, m: usize) -> Result<DMatrix<f64>> {
    let order = basis::suggested_quad_order(m.saturating_sub(1), t_f - t_i, 1.0);
    gram_bessel_with_order(t_i, t_f, m, order)
}

/// [`gram_bessel`] with an explicit quadrature order.
pub fn gram_bessel_with_order(t_i: f64, t_f: f64, m: usize, order: usize) -> Result<DMatrix<f64>> {
    if !(t_i < t_f) {
        return Err(Error::InvalidInterval {
            lower: t_i,
            upper: t_f,
        });
    }
    assert!(m >= 1, "basis size must be positive");
    let rule = basis::gauss_legendre(order);
    let half = 0.5 * (t_f - t_i);
    let mid = 0.5 * (t_i + t_f);
    let mut a = DMatrix::zeros(m, m);
    for (&x, &w) in rule.nodes().iter().zip(rule.weights()) {
        let t = mid + half * x;
        let j = basis::spherical_bessel_upto(m - 1, t);
        for r in 0..m {
            let wr = w * j[r];
            for c in r..m {
                a[(r, c)] += wr * j[c];
            }
        }
    }
    for r in 0..m {
        for c in 0..r {
            a[(r, c)] = a[(c, r)];
        }
    }
    a *= half;
    Ok(a)
}

/// Load vector B_n = √(π/2) ∫ f(t) j_n(t) dt over [t_i, t_f] with the
/// default node heuristic.
pub fn load_vector(
    target: &TargetFunction,
    t_i: f64,
    t_f: f64,
    m: usize,
) -> Result<Vec<Complex64>> {
    let order = basis::suggested_quad_order(
        m.saturating_sub(1),
        t_f - t_i,
        target.oscillation_scale().max(1.0),
    );
    load_vector_with_order(target, t_i, t_f, m, order)
}

/// [`load_vector`] with an explicit quadrature order.
pub fn load_vector_with_order(
    target: &TargetFunction,
    t_i: f64,
    t_f: f64,
    m: usize,
    order: usize,
) -> Result<Vec<Complex64>> {
    if !(t_i < t_f) {
        return Err(Error::InvalidInterval {
            lower: t_i,
            upper: t_f,
        });
    }
    assert!(m >= 1, "basis size must be positive");
    target.check_coverage(t_i, t_f)?;
    let rule = basis::gauss_legendre(order);
    let mut b = vec![Complex64::default(); m];
    let norm = (std::f64::consts::PI / 2.0).sqrt();
    for (lo, hi) in split_at_discontinuity(target, t_i, t_f) {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (lo + hi);
        for (&x, &w) in rule.nodes().iter().zip(rule.weights()) {
            let t = mid + half * x;
            let f = target.evaluate(t);
            let j = basis::spherical_bessel_upto(m - 1, t);
            for (slot, &jv) in b.iter_mut().zip(&j) {
                *slot += f * (w * half * jv);
            }
        }
    }
    for slot in &mut b {
        *slot *= norm;
    }
    Ok(b)
}

fn split_at_discontinuity(target: &TargetFunction, lo: f64, hi: f64) -> Vec<(f64, f64)> {
    match target.discontinuity() {
        Some(t0) if t0 > lo && t0 < hi => vec![(lo, t0), (t0, hi)],
        _ => vec![(lo, hi)],
    }
}

/// Rank and conditioning of a truncated-SVD solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveDiagnostics {
    /// σ_max / σ_min over the retained singular values (1 for a zero matrix).
    pub condition: f64,
    /// Number of retained singular values.
    pub rank: usize,
}

/// Normal-equation solve with symmetric diagonal equilibration.
///
/// Gram matrices of graded bases (j_n or J_{2n+1} on a short interval) have
/// singular values spanning the square of the basis-norm ratio, far below
/// what an f64 SVD of the raw matrix can resolve. Scaling by D = diag(√A_nn)
/// moves the grading out of the matrix: the scaled system D⁻¹AD⁻¹ (DΓ) = D⁻¹B
/// is well-conditioned and is what gets pseudo-inverted; rcond and the
/// reported diagnostics refer to it.
fn solve_scaled_normal_equations(
    a: &DMatrix<f64>,
    b: &[Complex64],
    rcond: f64,
) -> Result<(Vec<Complex64>, SolveDiagnostics)> {
    let m = a.nrows();
    let scale: Vec<f64> = (0..m)
        .map(|i| {
            let d = a[(i, i)];
            if d > 0.0 {
                d.sqrt()
            } else {
                1.0
            }
        })
        .collect();
    let scaled = DMatrix::from_fn(m, m, |r, c| a[(r, c)] / (scale[r] * scale[c]));
    let b_scaled: Vec<Complex64> = b.iter().zip(&scale).map(|(&v, &d)| v / d).collect();
    let (raw, diag) = solve_pseudo_inverse(&scaled, &b_scaled, rcond)?;
    let coefficients = raw.iter().zip(&scale).map(|(&v, &d)| v / d).collect();
    Ok((coefficients, diag))
}

/// Minimum-norm least-squares solution of A Γ = B for real square A via SVD,
/// treating singular values below rcond · σ_max as zero.
pub fn solve_pseudo_inverse(
    a: &DMatrix<f64>,
    b: &[Complex64],
    rcond: f64,
) -> Result<(Vec<Complex64>, SolveDiagnostics)> {
    let complex = a.map(|v| Complex64::new(v, 0.0));
    solve_pseudo_inverse_complex(&complex, b, rcond)
}

/// Complex counterpart of [`solve_pseudo_inverse`], used by the periodic
/// geometry where the Gram matrix carries phases.
pub fn solve_pseudo_inverse_complex(
    a: &DMatrix<Complex64>,
    b: &[Complex64],
    rcond: f64,
) -> Result<(Vec<Complex64>, SolveDiagnostics)> {
    if !(rcond > 0.0 && rcond < 1.0) {
        return Err(Error::InvalidRcond(rcond));
    }
    if a.iter().any(|v| !v.re.is_finite() || !v.im.is_finite())
        || b.iter().any(|v| !v.re.is_finite() || !v.im.is_finite())
    {
        return Err(Error::NonFinite);
    }
    let svd = a.clone().svd(true, true);
    let u = svd.u.expect("u requested");
    let v_t = svd.v_t.expect("v_t requested");
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let cutoff = rcond * sigma_max;
    let b_vec = DVector::from_column_slice(b);
    let mut projected = u.adjoint() * b_vec;
    let mut rank = 0;
    let mut sigma_min_kept = f64::INFINITY;
    for (i, &sigma) in svd.singular_values.iter().enumerate() {
        if sigma > cutoff && sigma > 0.0 {
            projected[i] /= Complex64::new(sigma, 0.0);
            rank += 1;
            sigma_min_kept = sigma_min_kept.min(sigma);
        } else {
            projected[i] = Complex64::default();
        }
    }
    let solution = v_t.adjoint() * projected;
    let condition = if rank == 0 {
        1.0
    } else {
        sigma_max / sigma_min_kept
    };
    Ok((
        solution.iter().copied().collect(),
        SolveDiagnostics { condition, rank },
    ))
}

/// √ of the quadrature-evaluated error functional for an arbitrary
/// coefficient vector: ∫ |f - Σ c_n φ_n|² dμ over the interval, with the
/// geometry's own basis and measure (ρ dρ in the radial case).
pub fn residual_norm(
    target: &TargetFunction,
    geometry: Geometry,
    interval: (f64, f64),
    coefficients: &[Complex64],
) -> Result<f64> {
    let (lo, hi) = interval;
    if !(lo < hi) {
        return Err(Error::InvalidInterval {
            lower: lo,
            upper: hi,
        });
    }
    let basis_freq = match geometry {
        Geometry::Periodic => 2.0 * std::f64::consts::PI,
        _ => 1.0,
    };
    let max_index = match geometry {
        Geometry::Radial => 2 * coefficients.len().saturating_sub(1) + 1,
        _ => coefficients.len().saturating_sub(1),
    };
    let order = basis::suggested_quad_order(
        max_index,
        hi - lo,
        target.oscillation_scale().max(basis_freq),
    );
    let rule = basis::gauss_legendre(order);
    let mut total = 0.0;
    for (a, b) in split_at_discontinuity(target, lo, hi) {
        total += rule.integrate(a, b, |x| {
            let diff = target.evaluate(x) - evaluate_basis_sum(geometry, coefficients, x);
            let weight = if geometry == Geometry::Radial { x } else { 1.0 };
            diff.norm_sqr() * weight
        });
    }
    Ok(total.max(0.0).sqrt())
}

/// Fit the first M spherical-Bessel terms to the target on [t_i, t_f]:
/// assemble A and B, solve Γ = A⁺B, and report √ε from the error integral
/// ε = ∫ |f(t) - √(2/π) Σ γ_n j_n(t)|² dt.
pub fn approximate_line(
    target: &TargetFunction,
    t_i: f64,
    t_f: f64,
    m: usize,
    rcond: f64,
) -> Result<FitResult> {
    let a = gram_bessel(t_i, t_f, m)?;
    let b = load_vector(target, t_i, t_f, m)?;
    let (coefficients, diag) = solve_scaled_normal_equations(&a, &b, rcond)?;
    let residual_l2 = residual_norm(target, Geometry::Line, (t_i, t_f), &coefficients)?;
    Ok(FitResult {
        geometry: Geometry::Line,
        interval: (t_i, t_f),
        coefficients,
        residual_l2,
        gram_condition: diag.condition,
        svd_rank: diag.rank,
    })
}

/// Fit ψ(t) = Σ_{k=0}^{N} C_k e^{iω_k t}, ω_k = (1 - 2k/N) 2π, to the target
/// on [t_1, t_2]. The Gram matrix comes from its closed form
/// α_{nm} = Δt e^{i 4π(n-m)/N (t_1+t_2)/2} sinc(2π(n-m)Δt/N) (Δt on the
/// diagonal) rather than quadrature; the load vector
/// b_n = ∫ Φ(t) e^{-iω_n t} dt is integrated numerically.
pub fn approximate_periodic(
    target: &TargetFunction,
    t_1: f64,
    t_2: f64,
    n: usize,
    rcond: f64,
) -> Result<FitResult> {
    if !(t_1 < t_2) {
        return Err(Error::InvalidInterval {
            lower: t_1,
            upper: t_2,
        });
    }
    assert!(n >= 1, "periodic basis needs N >= 1");
    target.check_coverage(t_1, t_2)?;
    let alpha = periodic_gram(t_1, t_2, n);
    let freqs = periodic_frequencies(n);
    let order = basis::suggested_quad_order(
        n,
        t_2 - t_1,
        target
            .oscillation_scale()
            .max(2.0 * std::f64::consts::PI),
    );
    let rule = basis::gauss_legendre(order);
    let mut b = vec![Complex64::default(); n + 1];
    for (lo, hi) in split_at_discontinuity(target, t_1, t_2) {
        for (slot, &w) in b.iter_mut().zip(&freqs) {
            *slot += rule.integrate_complex(lo, hi, |t| {
                target.evaluate(t) * Complex64::new(0.0, -w * t).exp()
            });
        }
    }
    let (coefficients, diag) = solve_pseudo_inverse_complex(&alpha, &b, rcond)?;
    let residual_l2 = residual_norm(target, Geometry::Periodic, (t_1, t_2), &coefficients)?;
    Ok(FitResult {
        geometry: Geometry::Periodic,
        interval: (t_1, t_2),
        coefficients,
        residual_l2,
        gram_condition: diag.condition,
        svd_rank: diag.rank,
    })
}

/// Closed-form periodic Gram matrix α_{nm} = ∫ e^{i(ω_m-ω_n)t} dt.
pub fn periodic_gram(t_1: f64, t_2: f64, n: usize) -> DMatrix<Complex64> {
    let dt = t_2 - t_1;
    let mid = 0.5 * (t_1 + t_2);
    let size = n + 1;
    DMatrix::from_fn(size, size, |r, c| {
        if r == c {
            Complex64::new(dt, 0.0)
        } else {
            let diff = r as f64 - c as f64;
            let phase = Complex64::new(0.0, 4.0 * std::f64::consts::PI * diff / n as f64 * mid).exp();
            let arg = 2.0 * std::f64::consts::PI * diff * dt / n as f64;
            phase * (dt * arg.sin() / arg)
        }
    })
}

/// Fit the first M odd-order Bessel terms h(ρ) = Σ (-1)ⁿ a_{2n} J_{2n+1}(ρ)/ρ
/// to the target on [ρ_i, ρ_f], minimizing the ρ-weighted error
/// ε = ∫ |H(ρ) - h(ρ)|² ρ dρ. The induced Gram and load integrals are
/// Ã_{nm} = ∫ (-1)^{n+m} J_{2n+1} J_{2m+1} / ρ dρ and
/// b̃_n = ∫ H(ρ) (-1)ⁿ J_{2n+1}(ρ) dρ; the 1/ρ singularity is removable and
/// quadrature nodes never sit at ρ = 0.
pub fn approximate_radial(
    target: &TargetFunction,
    rho_i: f64,
    rho_f: f64,
    m: usize,
    rcond: f64,
) -> Result<FitResult> {
    if !(rho_i < rho_f) || rho_i < 0.0 {
        return Err(Error::InvalidInterval {
            lower: rho_i,
            upper: rho_f,
        });
    }
    assert!(m >= 1, "basis size must be positive");
    target.check_coverage(rho_i, rho_f)?;
    let top = 2 * (m - 1) + 1;
    let gram_order = basis::suggested_quad_order(top, rho_f - rho_i, 1.0);
    let rule = basis::gauss_legendre(gram_order);
    let half = 0.5 * (rho_f - rho_i);
    let mid = 0.5 * (rho_i + rho_f);
    let mut a = DMatrix::zeros(m, m);
    for (&x, &w) in rule.nodes().iter().zip(rule.weights()) {
        let rho = mid + half * x;
        let j = basis::bessel_j_upto(top, rho);
        for r in 0..m {
            let jr = j[2 * r + 1];
            for c in r..m {
                let sign = if (r + c) % 2 == 1 { -1.0 } else { 1.0 };
                a[(r, c)] += w * sign * jr * j[2 * c + 1] / rho;
            }
        }
    }
    for r in 0..m {
        for c in 0..r {
            a[(r, c)] = a[(c, r)];
        }
    }
    a *= half;

    let load_order = basis::suggested_quad_order(
        top,
        rho_f - rho_i,
        target.oscillation_scale().max(1.0),
    );
    let load_rule = basis::gauss_legendre(load_order);
    let mut b = vec![Complex64::default(); m];
    for (lo, hi) in split_at_discontinuity(target, rho_i, rho_f) {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (lo + hi);
        for (&x, &w) in load_rule.nodes().iter().zip(load_rule.weights()) {
            let rho = mid + half * x;
            let f = target.evaluate(rho);
            let j = basis::bessel_j_upto(top, rho);
            for (n, slot) in b.iter_mut().enumerate() {
                let sign = if n % 2 == 1 { -1.0 } else { 1.0 };
                *slot += f * (w * half * sign * j[2 * n + 1]);
            }
        }
    }

    let (coefficients, diag) = solve_scaled_normal_equations(&a, &b, rcond)?;
    let residual_l2 = residual_norm(target, Geometry::Radial, (rho_i, rho_f), &coefficients)?;
    Ok(FitResult {
        geometry: Geometry::Radial,
        interval: (rho_i, rho_f),
        coefficients,
        residual_l2,
        gram_condition: diag.condition,
        svd_rank: diag.rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use ::approx::assert_abs_diff_eq;

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn gram_is_symmetric_and_positive_diagonal() {
        let a = gram_bessel(-0.5, 0.5, 6).unwrap();
        for r in 0..6 {
            assert!(a[(r, r)] > 0.0);
            for c in 0..6 {
                assert_eq!(a[(r, c)], a[(c, r)]);
            }
        }
        assert!(gram_bessel(0.5, -0.5, 3).is_err());
    }

    #[test]
    fn gram_00_matches_sinc_squared_integral() {
        // Adaptive-free oracle: composite Simpson on sin^2 t / t^2.
        let f = |t: f64| {
            if t.abs() < 1e-8 {
                1.0 - t * t / 3.0
            } else {
                (t.sin() / t).powi(2)
            }
        };
        let n = 20_000;
        let (a, b) = (-0.5_f64, 0.5_f64);
        let h = (b - a) / n as f64;
        let mut acc = f(a) + f(b);
        for k in 1..n {
            acc += f(a + k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
        }
        let oracle = acc * h / 3.0;
        let gram = gram_bessel(-0.5, 0.5, 1).unwrap();
        assert_abs_diff_eq!(gram[(0, 0)], oracle, epsilon = 1e-12);
    }

    #[test]
    fn load_vector_of_zero_target_is_zero() {
        let zero = TargetFunction::tabulated(vec![
            (-1.0, Complex64::default()),
            (1.0, Complex64::default()),
        ])
        .unwrap();
        let b = load_vector(&zero, -0.5, 0.5, 5).unwrap();
        assert!(b.iter().all(|v| v.norm() < 1e-15));
    }

    #[test]
    fn load_vector_of_basis_member_reproduces_gram_column() {
        // f = sqrt(2/pi) j_0 makes B_n = A_{n0}.
        let samples: Vec<(f64, Complex64)> = (0..=4000)
            .map(|k| {
                let t = -0.5 + k as f64 / 4000.0;
                (
                    t,
                    Complex64::new(
                        (2.0 / PI).sqrt() * basis::spherical_bessel(0, t),
                        0.0,
                    ),
                )
            })
            .collect();
        let target = TargetFunction::tabulated(samples).unwrap();
        let b = load_vector(&target, -0.5, 0.5, 1).unwrap();
        let a = gram_bessel(-0.5, 0.5, 1).unwrap();
        assert_abs_diff_eq!(b[0].re, a[(0, 0)], epsilon = 1e-7);
        assert_abs_diff_eq!(b[0].im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn tabulated_requires_coverage_and_order() {
        assert!(TargetFunction::tabulated(vec![(0.0, Complex64::default())]).is_err());
        assert!(TargetFunction::tabulated(vec![
            (0.0, Complex64::default()),
            (0.0, Complex64::default()),
        ])
        .is_err());
        let t = TargetFunction::tabulated(vec![
            (0.0, Complex64::new(0.0, 0.0)),
            (1.0, Complex64::new(2.0, 0.0)),
        ])
        .unwrap();
        assert_abs_diff_eq!(t.evaluate(0.25).re, 0.5, epsilon = 1e-15);
        assert!(matches!(
            load_vector(&t, -0.5, 0.5, 3),
            Err(Error::Coverage { .. })
        ));
    }

    #[test]
    fn pseudo_inverse_identity_and_truncation() {
        let eye = DMatrix::<f64>::identity(3, 3);
        let b = [
            Complex64::new(1.0, 2.0),
            Complex64::new(-0.5, 0.0),
            Complex64::new(0.0, -1.0),
        ];
        let (g, diag) = solve_pseudo_inverse(&eye, &b, 1e-12).unwrap();
        for (got, want) in g.iter().zip(&b) {
            assert!((got - want).norm() < 1e-14);
        }
        assert_eq!(diag.rank, 3);
        assert_abs_diff_eq!(diag.condition, 1.0, epsilon = 1e-12);

        let a = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 1e-20]));
        let b = [Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)];
        let (g, diag) = solve_pseudo_inverse(&a, &b, 1e-12).unwrap();
        assert!((g[0] - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        assert!(g[1].norm() < 1e-14);
        assert_eq!(diag.rank, 1);
    }

    #[test]
    fn pseudo_inverse_rejects_bad_input() {
        let a = DMatrix::from_element(2, 2, f64::NAN);
        let b = [Complex64::default(), Complex64::default()];
        assert!(matches!(
            solve_pseudo_inverse(&a, &b, 1e-12),
            Err(Error::NonFinite)
        ));
        let a = DMatrix::<f64>::identity(2, 2);
        assert!(matches!(
            solve_pseudo_inverse(&a, &b, 0.0),
            Err(Error::InvalidRcond(_))
        ));
        assert!(matches!(
            solve_pseudo_inverse(&a, &b, 1.0),
            Err(Error::InvalidRcond(_))
        ));
    }

    #[test]
    fn line_fit_recovers_basis_member() {
        // 80k interpolation nodes keep the tabulation error below the 1e-8
        // recovery check.
        let samples: Vec<(f64, Complex64)> = (0..=80_000)
            .map(|k| {
                let t = -1.0 + 2.0 * k as f64 / 80_000.0;
                (
                    t,
                    Complex64::new((2.0 / PI).sqrt() * basis::spherical_bessel(0, t), 0.0),
                )
            })
            .collect();
        let target = TargetFunction::tabulated(samples).unwrap();
        let fit = approximate_line(&target, -1.0, 1.0, 3, 1e-12).unwrap();
        assert!((fit.coefficients[0] - Complex64::new(1.0, 0.0)).norm() < 1e-8);
        assert!(fit.coefficients[1].norm() < 1e-8);
        assert!(fit.coefficients[2].norm() < 1e-8);
        assert!(fit.residual_l2 < 1e-7);
    }

    #[test]
    fn periodic_gram_matches_quadrature() {
        let n = 9;
        let (t1, t2) = (-0.4_f64, 0.7_f64);
        let alpha = periodic_gram(t1, t2, n);
        let freqs = periodic_frequencies(n);
        let rule = basis::gauss_legendre(400);
        for r in 0..=n {
            for c in 0..=n {
                let direct = rule.integrate_complex(t1, t2, |t| {
                    Complex64::new(0.0, (freqs[c] - freqs[r]) * t).exp()
                });
                assert!(
                    (alpha[(r, c)] - direct).norm() < 1e-10,
                    "alpha[{r}{c}] = {} vs {}",
                    alpha[(r, c)],
                    direct
                );
            }
        }
    }

    #[test]
    fn periodic_gram_symmetric_interval_is_real() {
        let alpha = periodic_gram(-0.5, 0.5, 9);
        for r in 0..10 {
            for c in 0..10 {
                assert!(alpha[(r, c)].im.abs() < 1e-15);
                assert!((alpha[(r, c)] - alpha[(c, r)].conj()).norm() < 1e-15);
            }
        }
        assert_abs_diff_eq!(alpha[(3, 3)].re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn radial_fit_recovers_basis_member() {
        let samples: Vec<(f64, Complex64)> = (0..=80_000)
            .map(|k| {
                let rho = 0.25 + 2.0 * k as f64 / 80_000.0;
                (
                    rho,
                    Complex64::new(basis::bessel_j(1, rho) / rho, 0.0),
                )
            })
            .collect();
        let target = TargetFunction::tabulated(samples).unwrap();
        let fit = approximate_radial(&target, 0.5, 1.5, 2, 1e-12).unwrap();
        assert!(
            (fit.coefficients[0] - Complex64::new(1.0, 0.0)).norm() < 1e-8,
            "a = {:?}",
            fit.coefficients
        );
        assert!(fit.coefficients[1].norm() < 1e-8);
    }

    #[test]
    fn radial_evaluate_limit_at_zero() {
        let coefficients = vec![Complex64::new(1.0, 0.0), Complex64::new(0.7, 0.0)];
        let at_zero = evaluate_basis_sum(Geometry::Radial, &coefficients, 0.0);
        assert!((at_zero - Complex64::new(0.5, 0.0)).norm() < 1e-15);
        let near_zero = evaluate_basis_sum(Geometry::Radial, &coefficients, 1e-8);
        assert!((near_zero - at_zero).norm() < 1e-10);
    }

    #[test]
    fn fit_result_json_schema() {
        let fit = FitResult {
            geometry: Geometry::Line,
            interval: (-0.5, 0.5),
            coefficients: vec![Complex64::new(1.0, 0.0)],
            residual_l2: 0.25,
            gram_condition: 10.0,
            svd_rank: 1,
        };
        let json = serde_json::to_string(&fit).unwrap();
        assert_eq!(
            json,
            r#"{"geometry":"line","interval":[-0.5,0.5],"coefficients":[[1.0,0.0]],"residual_l2":0.25,"gram_condition":10.0,"svd_rank":1}"#
        );
        let back: FitResult = serde_json::from_str(&json).unwrap();
        assert_eq!(back, fit);
    }

    #[test]
    fn step_target_splits_cleanly() {
        let step = TargetFunction::UnitStep(0.0);
        let fit = approximate_line(&step, -0.5, 0.5, 6, 1e-12).unwrap();
        // The projection of the step onto a small bandlimited basis keeps a
        // finite residual but must not blow up.
        assert!(fit.residual_l2.is_finite());
        assert!(fit.residual_l2 < 0.5);
        assert!(fit.evaluate(0.4).re > 0.5);
        assert!(fit.evaluate(-0.4).re < 0.5);
    }
}
