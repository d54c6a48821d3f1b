//! Shared test oracles: independent quadrature, dense discrete least squares,
//! Gaussian elimination, and seeded random spectra.
//!
//! Everything here deliberately avoids the implementation paths it is used to
//! check (composite Simpson instead of the Gauss-Legendre rules, sampled
//! least squares instead of Gram assembly, elimination instead of SVD).

#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use superosc::fit::TargetFunction;
use superosc::spectrum::LegendreSpectrum;

/// Composite Simpson rule with n (even) panels.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    assert!(n.is_multiple_of(2) && n >= 2);
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for k in 1..n {
        acc += f(a + k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    acc * h / 3.0
}

pub fn simpson_complex<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, n: usize) -> Complex64 {
    Complex64::new(
        simpson(|x| f(x).re, a, b, n),
        simpson(|x| f(x).im, a, b, n),
    )
}

/// Minimum-norm least squares for a dense sampled system via SVD, with
/// column equilibration and a relative cutoff on the equilibrated design
/// singular values.
pub fn dense_solve(
    mut design: DMatrix<Complex64>,
    rhs: &[Complex64],
    rcond: f64,
) -> Vec<Complex64> {
    let cols = design.ncols();
    let scales: Vec<f64> = (0..cols)
        .map(|c| {
            design
                .column(c)
                .iter()
                .map(|v| v.norm_sqr())
                .sum::<f64>()
                .sqrt()
        })
        .collect();
    for c in 0..cols {
        for r in 0..design.nrows() {
            design[(r, c)] /= Complex64::new(scales[c], 0.0);
        }
    }
    let svd = design.svd(true, true);
    let u = svd.u.expect("u");
    let v_t = svd.v_t.expect("v_t");
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let mut projected = u.adjoint() * nalgebra::DVector::from_column_slice(rhs);
    for (i, &sigma) in svd.singular_values.iter().enumerate() {
        if sigma > rcond * sigma_max {
            projected[i] /= Complex64::new(sigma, 0.0);
        } else {
            projected[i] = Complex64::default();
        }
    }
    (v_t.adjoint() * projected)
        .iter()
        .zip(&scales)
        .map(|(&v, &s)| v / s)
        .collect()
}

/// Relative singular-value cutoff for sampled design matrices. Design-matrix
/// singular values are square roots of the Gram ones, so this corresponds to
/// the library's default Gram rcond of 1e-12 and retains the same subspace.
pub const DESIGN_RCOND: f64 = 1e-6;

/// Dense discrete least-squares oracle on the line: K uniform midpoint
/// samples of the target fit with the spherical-Bessel basis.
pub fn dense_lsq_line(
    target: &TargetFunction,
    t_i: f64,
    t_f: f64,
    m: usize,
    k_samples: usize,
    rcond: f64,
) -> Vec<Complex64> {
    let norm = (2.0 / std::f64::consts::PI).sqrt();
    let mut design = DMatrix::zeros(k_samples, m);
    let mut rhs = vec![Complex64::default(); k_samples];
    for k in 0..k_samples {
        let t = t_i + (t_f - t_i) * (k as f64 + 0.5) / k_samples as f64;
        let j = superosc::basis::spherical_bessel_upto(m - 1, t);
        for n in 0..m {
            design[(k, n)] = Complex64::new(norm * j[n], 0.0);
        }
        rhs[k] = target.evaluate(t);
    }
    dense_solve(design, &rhs, rcond)
}

/// Dense oracle in the periodic exponential basis with parameter N
/// (N + 1 terms).
pub fn dense_lsq_periodic(
    target: &TargetFunction,
    t_1: f64,
    t_2: f64,
    n: usize,
    k_samples: usize,
    rcond: f64,
) -> Vec<Complex64> {
    let freqs = superosc::fit::periodic_frequencies(n);
    let mut design = DMatrix::zeros(k_samples, n + 1);
    let mut rhs = vec![Complex64::default(); k_samples];
    for k in 0..k_samples {
        let t = t_1 + (t_2 - t_1) * (k as f64 + 0.5) / k_samples as f64;
        for (c, &w) in freqs.iter().enumerate() {
            design[(k, c)] = Complex64::new(0.0, w * t).exp();
        }
        rhs[k] = target.evaluate(t);
    }
    dense_solve(design, &rhs, rcond)
}

/// Dense oracle in the odd-order Bessel basis, rows weighted by sqrt(ρ) to
/// reproduce the ρ dρ error measure.
pub fn dense_lsq_radial(
    target: &TargetFunction,
    rho_i: f64,
    rho_f: f64,
    m: usize,
    k_samples: usize,
    rcond: f64,
) -> Vec<Complex64> {
    let top = 2 * (m - 1) + 1;
    let mut design = DMatrix::zeros(k_samples, m);
    let mut rhs = vec![Complex64::default(); k_samples];
    for k in 0..k_samples {
        let rho = rho_i + (rho_f - rho_i) * (k as f64 + 0.5) / k_samples as f64;
        let weight = rho.sqrt();
        let j = superosc::basis::bessel_j_upto(top, rho);
        for n in 0..m {
            let sign = if n % 2 == 1 { -1.0 } else { 1.0 };
            design[(k, n)] = Complex64::new(weight * sign * j[2 * n + 1] / rho, 0.0);
        }
        rhs[k] = target.evaluate(rho) * weight;
    }
    dense_solve(design, &rhs, rcond)
}

/// Gaussian elimination with partial pivoting for a real matrix and complex
/// right-hand side.
pub fn gaussian_elimination(a: &[Vec<f64>], b: &[Complex64]) -> Vec<Complex64> {
    let n = a.len();
    let mut m: Vec<Vec<Complex64>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r: Vec<Complex64> = row.iter().map(|&v| Complex64::new(v, 0.0)).collect();
            r.push(rhs);
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| {
                m[i][col]
                    .norm()
                    .partial_cmp(&m[j][col].norm())
                    .expect("finite")
            })
            .expect("nonempty");
        m.swap(col, pivot);
        for row in col + 1..n {
            let factor = m[row][col] / m[col][col];
            // Indexing keeps the pivot-row/target-row borrows apart.
            #[allow(clippy::needless_range_loop)]
            for k in col..=n {
                let above = m[col][k];
                m[row][k] -= factor * above;
            }
        }
    }
    let mut x = vec![Complex64::default(); n];
    for row in (0..n).rev() {
        let mut acc = m[row][n];
        for k in row + 1..n {
            acc -= m[row][k] * x[k];
        }
        x[row] = acc / m[row][row];
    }
    x
}

/// Seeded spectrum with standard complex Gaussian coefficients, resampling
/// c_0 until |c_0| exceeds `min_c0`.
pub fn random_spectrum<R: Rng>(rng: &mut R, m: usize, min_c0: f64) -> LegendreSpectrum {
    let normal = rand_distr::StandardNormal;
    let draw = |rng: &mut R| -> Complex64 {
        Complex64::new(rng.sample(normal), rng.sample(normal))
    };
    let mut coefficients: Vec<Complex64> = (0..m).map(|_| draw(rng)).collect();
    while coefficients[0].norm() <= min_c0 {
        coefficients[0] = draw(rng);
    }
    LegendreSpectrum::new(coefficients)
}

/// Same, scaled to unit total energy.
pub fn random_unit_energy_spectrum<R: Rng>(rng: &mut R, m: usize) -> LegendreSpectrum {
    let spec = random_spectrum(rng, m, 0.1);
    let scale = superosc::energy::total_energy(&spec).sqrt();
    LegendreSpectrum::new(spec.coefficients().iter().map(|c| c / scale).collect())
}

/// Truncated time-domain energy integral ∫_{-T}^{x} |g|² dt plus the
/// analytic left tail: asymptotically |g(t)|² ~ (2/π) |α sin t + β cos t|²/t²
/// with α = Σ γ_n cos(nπ/2), β = -Σ γ_n sin(nπ/2), whose average integrates
/// to (|α|² + |β|²)/(π T) on either side.
pub fn energy_oracle_upto(spectrum: &LegendreSpectrum, x: f64, t_cut: f64) -> f64 {
    assert!(x >= -t_cut);
    let panels = (((x + t_cut) * 200.0).ceil() as usize).max(2000);
    let panels = panels + panels % 2;
    let bulk = simpson(
        |t| superosc::spectrum::evaluate(spectrum, t).norm_sqr(),
        -t_cut,
        x,
        panels,
    );
    bulk + asymptotic_tail(spectrum, t_cut)
}

/// Analytic one-sided tail ∫_{T}^{∞} of the averaged asymptotic |g|².
pub fn asymptotic_tail(spectrum: &LegendreSpectrum, t_cut: f64) -> f64 {
    let mut alpha = Complex64::default();
    let mut beta = Complex64::default();
    let mut i_pow = Complex64::new(1.0, 0.0);
    for (n, &c) in spectrum.coefficients().iter().enumerate() {
        let gamma = i_pow * c;
        let (s, co) = (n as f64 * std::f64::consts::FRAC_PI_2).sin_cos();
        alpha += gamma * co;
        beta -= gamma * s;
        i_pow *= Complex64::i();
    }
    (alpha.norm_sqr() + beta.norm_sqr()) / (std::f64::consts::PI * t_cut)
}

/// Total energy oracle over the whole line: quadrature on [-T, T] plus both
/// tails.
pub fn total_energy_oracle(spectrum: &LegendreSpectrum, t_cut: f64) -> f64 {
    energy_oracle_upto(spectrum, t_cut, t_cut) + asymptotic_tail(spectrum, t_cut)
}
