//! Parsers for the CLI's small input grammars: complex numbers in `a+bi`
//! form, target specifications like `cos:10` or `table:PATH`, order lists,
//! and tabulated sample files.

use std::path::Path;

use num_complex::Complex64;
use superosc::fit::TargetFunction;
use superosc::spectrum::LegendreSpectrum;

use crate::CliError;

/// Parse `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i` (exponents allowed in both
/// parts, e.g. `1e-3+2.5e2i`).
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let s = text.trim();
    if s.is_empty() {
        return Err("empty complex literal".into());
    }
    if let Some(body) = s.strip_suffix(['i', 'I']) {
        // Find the sign separating the real part, skipping a leading sign
        // and exponent signs.
        let bytes = body.as_bytes();
        let mut split = None;
        for (idx, &b) in bytes.iter().enumerate().skip(1) {
            if (b == b'+' || b == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
                split = Some(idx);
            }
        }
        let (re_part, im_part) = match split {
            Some(idx) => (&body[..idx], &body[idx..]),
            None => ("", body),
        };
        let re = if re_part.is_empty() {
            0.0
        } else {
            re_part
                .parse::<f64>()
                .map_err(|_| format!("bad real part in '{text}'"))?
        };
        let im = match im_part {
            "" | "+" => 1.0,
            "-" => -1.0,
            other => other
                .parse::<f64>()
                .map_err(|_| format!("bad imaginary part in '{text}'"))?,
        };
        Ok(Complex64::new(re, im))
    } else {
        s.parse::<f64>()
            .map(|re| Complex64::new(re, 0.0))
            .map_err(|_| format!("bad number '{text}'"))
    }
}

/// Comma-separated list of complex values.
pub fn parse_complex_list(text: &str) -> Result<Vec<Complex64>, String> {
    text.split(',')
        .filter(|part| !part.trim().is_empty())
        .map(parse_complex)
        .collect()
}

/// Target grammar: `cos:A`, `exp:A`, `cexp:S`, `step:T0`, `radial-cos:A`,
/// `radial-exp:A`, `table:PATH`.
pub fn parse_target(spec: &str) -> Result<TargetFunction, CliError> {
    let (kind, arg) = spec
        .split_once(':')
        .ok_or_else(|| CliError::config(format!("target '{spec}' needs the form NAME:ARG")))?;
    let numeric = |what: &str| -> Result<f64, CliError> {
        arg.parse::<f64>()
            .map_err(|_| CliError::config(format!("target {what} takes a number, got '{arg}'")))
    };
    match kind {
        "cos" => Ok(TargetFunction::Cosine(numeric("cos")?)),
        "exp" => Ok(TargetFunction::Exponential(numeric("exp")?)),
        "cexp" => Ok(TargetFunction::ComplexExponential(numeric("cexp")?)),
        "step" => Ok(TargetFunction::UnitStep(numeric("step")?)),
        "radial-cos" => Ok(TargetFunction::RadialCosine(numeric("radial-cos")?)),
        "radial-exp" => Ok(TargetFunction::RadialExponential(numeric("radial-exp")?)),
        "table" => read_table(Path::new(arg)),
        other => Err(CliError::config(format!(
            "unknown target '{other}' (expected cos, exp, cexp, step, radial-cos, radial-exp, table)"
        ))),
    }
}

/// Sample file: one `coordinate,re[,im]` row per line (whitespace also
/// accepted as separator); `#` comments and blank lines ignored.
pub fn read_table(path: &Path) -> Result<TargetFunction, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::config(format!("cannot read table {}: {e}", path.display())))?;
    let mut samples = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|f| !f.is_empty())
            .collect();
        if fields.len() < 2 || fields.len() > 3 {
            return Err(CliError::config(format!(
                "{}:{}: expected 'coordinate,re[,im]'",
                path.display(),
                lineno + 1
            )));
        }
        let parse = |f: &str| -> Result<f64, CliError> {
            f.parse::<f64>().map_err(|_| {
                CliError::config(format!(
                    "{}:{}: bad number '{f}'",
                    path.display(),
                    lineno + 1
                ))
            })
        };
        let coord = parse(fields[0])?;
        let re = parse(fields[1])?;
        let im = if fields.len() == 3 { parse(fields[2])? } else { 0.0 };
        samples.push((coord, Complex64::new(re, im)));
    }
    TargetFunction::tabulated(samples).map_err(CliError::from_config_error)
}

/// Order lists: `0..4` (half-open), `0..=3` (inclusive), `0,2,4`, or a
/// single order.
pub fn parse_orders(text: &str) -> Result<Vec<usize>, String> {
    let s = text.trim();
    if let Some((lo, hi)) = s.split_once("..=") {
        let (lo, hi) = (range_end(lo)?, range_end(hi)?);
        if hi < lo {
            return Err(format!("empty order range '{s}'"));
        }
        return Ok((lo..=hi).collect());
    }
    if let Some((lo, hi)) = s.split_once("..") {
        let (lo, hi) = (range_end(lo)?, range_end(hi)?);
        if hi <= lo {
            return Err(format!("empty order range '{s}'"));
        }
        return Ok((lo..hi).collect());
    }
    s.split(',')
        .map(|part| range_end(part.trim()))
        .collect::<Result<Vec<_>, _>>()
}

fn range_end(text: &str) -> Result<usize, String> {
    text.parse::<usize>()
        .map_err(|_| format!("bad order '{text}'"))
}

/// Spectrum JSON file ({"band": [lo, hi] | null, "coefficients": [[re, im], ...]}).
pub fn read_spectrum(path: &Path) -> Result<LegendreSpectrum, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::config(format!("malformed spectrum {}: {e}", path.display())))
}
