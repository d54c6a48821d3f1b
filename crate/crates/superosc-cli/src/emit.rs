//! Deterministic JSON and CSV emission: every float is printed with 17
//! significant digits in scientific notation, fields in fixed order, so
//! identical configurations produce byte-identical output.

use num_complex::Complex64;
use superosc::energy::EnergyReport;
use superosc::fit::{FitResult, Geometry};
use superosc::spectrum::LegendreSpectrum;

use crate::CliError;

/// 17 significant digits, scientific notation, locale-free.
pub fn float(v: f64) -> Result<String, CliError> {
    if !v.is_finite() {
        return Err(CliError::numerical(format!(
            "non-finite value {v} in output"
        )));
    }
    Ok(format!("{v:.16e}"))
}

fn pair(c: Complex64) -> Result<String, CliError> {
    Ok(format!("[{},{}]", float(c.re)?, float(c.im)?))
}

fn pair_list(values: &[Complex64]) -> Result<String, CliError> {
    let parts: Vec<String> = values.iter().map(|&c| pair(c)).collect::<Result<_, _>>()?;
    Ok(format!("[{}]", parts.join(",")))
}

pub fn geometry_name(geometry: Geometry) -> &'static str {
    match geometry {
        Geometry::Line => "line",
        Geometry::Periodic => "periodic",
        Geometry::Radial => "radial",
    }
}

pub fn fit_result_json(fit: &FitResult) -> Result<String, CliError> {
    Ok(format!(
        "{{\"geometry\":\"{}\",\"interval\":[{},{}],\"coefficients\":{},\"residual_l2\":{},\"gram_condition\":{},\"svd_rank\":{}}}\n",
        geometry_name(fit.geometry),
        float(fit.interval.0)?,
        float(fit.interval.1)?,
        pair_list(&fit.coefficients)?,
        float(fit.residual_l2)?,
        float(fit.gram_condition)?,
        fit.svd_rank,
    ))
}

pub fn spectrum_json(spectrum: &LegendreSpectrum) -> Result<String, CliError> {
    let band = match spectrum.band() {
        Some((lo, hi)) => format!("[{},{}]", float(lo)?, float(hi)?),
        None => "null".to_string(),
    };
    Ok(format!(
        "{{\"band\":{band},\"coefficients\":{}}}\n",
        pair_list(spectrum.coefficients())?
    ))
}

pub fn energy_report_json(report: &EnergyReport, bound_satisfied: bool) -> Result<String, CliError> {
    Ok(format!(
        "{{\"total\":{},\"interval\":[{},{}],\"delta_e\":{},\"fraction\":{},\"r_min\":{},\"bound\":{},\"bound_satisfied\":{}}}\n",
        float(report.total)?,
        float(report.interval.0)?,
        float(report.interval.1)?,
        float(report.delta_e)?,
        float(report.fraction)?,
        float(report.r_min)?,
        float(report.bound)?,
        bound_satisfied,
    ))
}

pub struct RatePoint {
    pub t: f64,
    pub rate: Complex64,
    pub classification: &'static str,
}

pub fn analyze_report_json(
    cumulants: &[Complex64],
    points: &[RatePoint],
) -> Result<String, CliError> {
    let point_objects: Vec<String> = points
        .iter()
        .map(|p| {
            Ok(format!(
                "{{\"t\":{},\"rate\":{},\"classification\":\"{}\"}}",
                float(p.t)?,
                pair(p.rate)?,
                p.classification
            ))
        })
        .collect::<Result<_, CliError>>()?;
    Ok(format!(
        "{{\"cumulants\":{},\"points\":[{}]}}\n",
        pair_list(cumulants)?,
        point_objects.join(",")
    ))
}

/// Comma-separated CSV with a header row; one formatted float per cell.
pub fn csv(header: &[&str], rows: &[Vec<f64>]) -> Result<String, CliError> {
    let mut out = String::with_capacity(32 * rows.len());
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|&v| float(v)).collect::<Result<_, _>>()?;
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    Ok(out)
}
