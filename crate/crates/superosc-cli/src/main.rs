//! Command-line front end: target fitting, spectrum synthesis, local-rate
//! analysis, energy reports and basis tabulation, with plot-ready CSV/JSON
//! output.

mod emit;
mod parse;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use superosc::energy;
use superosc::fit::{self, Geometry};
use superosc::shift::{self, BesselSeries};
use superosc::spectrum;

/// Default relative singular-value cutoff for the pseudo-inverse.
const DEFAULT_RCOND: f64 = 1e-12;

/// Context window for fit CSVs: this many times wider than the fit interval.
const CONTEXT_FACTOR: f64 = 6.0;

#[derive(Debug)]
enum CliErrorKind {
    /// Bad configuration or input files: exit code 2.
    Config,
    /// Numerical failure (nodes, non-finite values): exit code 3.
    Numerical,
}

#[derive(Debug)]
pub struct CliError {
    kind: CliErrorKind,
    message: String,
}

impl CliError {
    fn config(message: impl Into<String>) -> Self {
        Self {
            kind: CliErrorKind::Config,
            message: message.into(),
        }
    }

    fn numerical(message: impl Into<String>) -> Self {
        Self {
            kind: CliErrorKind::Numerical,
            message: message.into(),
        }
    }

    /// Library errors raised while validating inputs are configuration
    /// problems.
    fn from_config_error(e: superosc::Error) -> Self {
        Self::config(e.to_string())
    }

    fn exit_code(&self) -> u8 {
        match self.kind {
            CliErrorKind::Config => 2,
            CliErrorKind::Numerical => 3,
        }
    }
}

impl From<superosc::Error> for CliError {
    fn from(e: superosc::Error) -> Self {
        match e {
            superosc::Error::Node { .. }
            | superosc::Error::DegenerateSpectrum { .. }
            | superosc::Error::NonFinite => Self::numerical(e.to_string()),
            other => Self::config(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "superosc",
    about = "Construct, fit and analyze bandlimited signals that locally oscillate or grow faster than their band limit",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Least-squares fit of a target function on an interval; writes the fit
    /// JSON and a CSV sampling target and fit over a wider context window.
    Approximate(ApproximateArgs),
    /// Build a spectrum with a prescribed local rate (or matching e^{ist}
    /// derivatives); writes the spectrum JSON and a CSV of the signal.
    Synthesize(SynthesizeArgs),
    /// Local rates and cumulants of a spectrum read from JSON.
    Analyze(AnalyzeArgs),
    /// Energy report with the fractional-energy bound.
    Energy(EnergyArgs),
    /// Tabulate basis functions to CSV.
    BasisDump(BasisDumpArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GeometryArg {
    Line,
    Periodic,
    Radial,
}

#[derive(Args)]
struct ApproximateArgs {
    #[arg(long, value_enum)]
    geometry: GeometryArg,
    /// Target: cos:A, exp:A, cexp:S, step:T0, radial-cos:A, radial-exp:A, table:PATH.
    #[arg(long)]
    target: String,
    /// Fit interval (two endpoints).
    #[arg(long, num_args = 2, allow_negative_numbers = true, value_names = ["LO", "HI"])]
    interval: Vec<f64>,
    /// Basis size (for the periodic geometry this is N+1).
    #[arg(long)]
    terms: usize,
    /// Relative singular-value cutoff; defaults to SUPEROSC_RCOND or 1e-12.
    #[arg(long)]
    rcond: Option<f64>,
    /// CSV row count.
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Output base path; writes BASE.json and BASE.csv.
    #[arg(long, default_value = "fit")]
    output: PathBuf,
}

#[derive(Args)]
struct SynthesizeArgs {
    /// Local complex rate z at the origin (a+bi form), e.g. 0+10i.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "everywhere")]
    rate: Option<String>,
    /// Zeroth coefficient c0 (a+bi form).
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    c0: String,
    /// Higher coefficients c2, c3, ... as a comma-separated complex list.
    #[arg(long, allow_hyphen_values = true)]
    tail: Option<String>,
    /// Match e^{ist} derivatives at the origin for this s instead of
    /// prescribing a rate.
    #[arg(long)]
    everywhere: Option<f64>,
    /// Coefficient count for --everywhere.
    #[arg(long, default_value_t = 12)]
    terms: usize,
    /// Sampling range for the CSV.
    #[arg(long, num_args = 2, allow_negative_numbers = true, value_names = ["LO", "HI"], default_values_t = [-10.0, 10.0])]
    range: Vec<f64>,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Output base path; writes BASE.json and BASE.csv.
    #[arg(long, default_value = "synthesis")]
    output: PathBuf,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Spectrum JSON file.
    spectrum: PathBuf,
    /// Expansion origins t' at which to report the local rate.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_values_t = [0.0])]
    at: Vec<f64>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct EnergyArgs {
    /// Spectrum JSON file.
    spectrum: PathBuf,
    #[arg(long, num_args = 2, allow_negative_numbers = true, value_names = ["LO", "HI"])]
    interval: Vec<f64>,
    /// Grid resolution of the logarithmic-derivative scan.
    #[arg(long, default_value_t = energy::DEFAULT_RATE_GRID)]
    grid: usize,
    /// Truncation of the shifted series in the cumulative-energy sum.
    #[arg(long, default_value_t = energy::DEFAULT_TRUNCATION)]
    n_trunc: usize,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BasisFamily {
    Legendre,
    SphBessel,
    Zernike,
    BesselJ,
}

#[derive(Args)]
struct BasisDumpArgs {
    #[arg(long, value_enum)]
    family: BasisFamily,
    /// Orders: `0..4`, `0..=3`, `0,2,4` or a single order.
    #[arg(long)]
    orders: String,
    /// Number of grid points.
    #[arg(long, default_value_t = 201)]
    grid: usize,
    /// Override the family's natural range.
    #[arg(long, num_args = 2, allow_negative_numbers = true, value_names = ["LO", "HI"])]
    range: Option<Vec<f64>>,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Approximate(args) => cmd_approximate(args),
        Command::Synthesize(args) => cmd_synthesize(args),
        Command::Analyze(args) => cmd_analyze(args),
        Command::Energy(args) => cmd_energy(args),
        Command::BasisDump(args) => cmd_basis_dump(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.exit_code())
        }
    }
}

fn resolve_rcond(flag: Option<f64>) -> Result<f64, CliError> {
    let value = match flag {
        Some(v) => v,
        None => match std::env::var("SUPEROSC_RCOND") {
            Ok(text) => text
                .parse::<f64>()
                .map_err(|_| CliError::config(format!("SUPEROSC_RCOND='{text}' is not a number")))?,
            Err(_) => DEFAULT_RCOND,
        },
    };
    if !(value > 0.0 && value < 1.0) {
        return Err(CliError::config(format!("rcond must lie in (0, 1), got {value}")));
    }
    Ok(value)
}

fn interval_pair(values: &[f64]) -> Result<(f64, f64), CliError> {
    let (lo, hi) = (values[0], values[1]);
    // `!(lo < hi)` also rejects NaN endpoints.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(lo < hi) {
        return Err(CliError::config(format!(
            "interval must be well-ordered, got [{lo}, {hi}]"
        )));
    }
    Ok((lo, hi))
}

fn write_file(path: &PathBuf, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::config(format!("cannot write {}: {e}", path.display())))
}

fn write_or_print(path: &Option<PathBuf>, contents: &str) -> Result<(), CliError> {
    match path {
        Some(p) => write_file(p, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn cmd_approximate(args: ApproximateArgs) -> Result<(), CliError> {
    let (lo, hi) = interval_pair(&args.interval)?;
    if args.terms < 1 {
        return Err(CliError::config("--terms must be at least 1"));
    }
    if args.samples < 2 {
        return Err(CliError::config("--samples must be at least 2"));
    }
    let rcond = resolve_rcond(args.rcond)?;
    let target = parse::parse_target(&args.target)?;

    let result = match args.geometry {
        GeometryArg::Line => fit::approximate_line(&target, lo, hi, args.terms, rcond)?,
        GeometryArg::Periodic => {
            if args.terms < 2 {
                return Err(CliError::config(
                    "periodic geometry needs at least 2 terms (basis size N+1 with N >= 1)",
                ));
            }
            fit::approximate_periodic(&target, lo, hi, args.terms - 1, rcond)?
        }
        GeometryArg::Radial => {
            if lo < 0.0 {
                return Err(CliError::config("radial intervals start at rho >= 0"));
            }
            fit::approximate_radial(&target, lo, hi, args.terms, rcond)?
        }
    };

    // Context window spanning both the fit interval and its surroundings.
    let width = hi - lo;
    let center = 0.5 * (lo + hi);
    let mut window_lo = center - 0.5 * CONTEXT_FACTOR * width;
    let window_hi = center + 0.5 * CONTEXT_FACTOR * width;
    if result.geometry == Geometry::Radial {
        // Radial targets carry 1/sqrt(rho) factors; stay off the axis.
        window_lo = window_lo.max(1e-9);
    }

    let mut rows = Vec::with_capacity(args.samples);
    for k in 0..args.samples {
        let t = window_lo + (window_hi - window_lo) * k as f64 / (args.samples - 1) as f64;
        let target_value = target.evaluate(t);
        let fit_value = result.evaluate(t);
        rows.push(vec![
            t,
            target_value.re,
            target_value.im,
            fit_value.re,
            fit_value.im,
        ]);
    }
    let csv = emit::csv(&["t", "target_re", "target_im", "fit_re", "fit_im"], &rows)?;
    let json = emit::fit_result_json(&result)?;

    write_file(&args.output.with_extension("json"), &json)?;
    write_file(&args.output.with_extension("csv"), &csv)?;
    eprintln!(
        "wrote {} and {} (residual {:.3e}, rank {})",
        args.output.with_extension("json").display(),
        args.output.with_extension("csv").display(),
        result.residual_l2,
        result.svd_rank
    );
    Ok(())
}

fn cmd_synthesize(args: SynthesizeArgs) -> Result<(), CliError> {
    let (lo, hi) = interval_pair(&args.range)?;
    if args.samples < 2 {
        return Err(CliError::config("--samples must be at least 2"));
    }
    let spectrum = if let Some(s) = args.everywhere {
        if args.terms < 1 {
            return Err(CliError::config("--terms must be at least 1"));
        }
        spectrum::superoscillate_everywhere(s, args.terms)
    } else if let Some(rate_text) = &args.rate {
        let rate = parse::parse_complex(rate_text).map_err(CliError::config)?;
        let c0 = parse::parse_complex(&args.c0).map_err(CliError::config)?;
        if c0.norm() == 0.0 {
            return Err(CliError::config("c0 must be nonzero"));
        }
        let tail = match &args.tail {
            Some(text) => parse::parse_complex_list(text).map_err(CliError::config)?,
            None => Vec::new(),
        };
        spectrum::prescribe_rate(rate, &tail, c0).map_err(CliError::from_config_error)?
    } else {
        return Err(CliError::config("pass either --rate Z or --everywhere S"));
    };

    let mut rows = Vec::with_capacity(args.samples);
    for k in 0..args.samples {
        let t = lo + (hi - lo) * k as f64 / (args.samples - 1) as f64;
        let g = spectrum::evaluate(&spectrum, t);
        rows.push(vec![t, g.re, g.im]);
    }
    let csv = emit::csv(&["t", "g_re", "g_im"], &rows)?;
    let json = emit::spectrum_json(&spectrum)?;
    write_file(&args.output.with_extension("json"), &json)?;
    write_file(&args.output.with_extension("csv"), &csv)?;
    eprintln!(
        "wrote {} and {} ({} coefficients)",
        args.output.with_extension("json").display(),
        args.output.with_extension("csv").display(),
        spectrum.len()
    );
    Ok(())
}

fn classification(rate: Complex64) -> &'static str {
    match (rate.im.abs() > 1.0, rate.re.abs() > 1.0) {
        (true, true) => "superoscillating+supergrowing",
        (true, false) => "superoscillating",
        (false, true) => "supergrowing",
        (false, false) => "sub-band",
    }
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<(), CliError> {
    let spectrum = parse::read_spectrum(&args.spectrum)?;
    let cumulants: Vec<Complex64> = (1..=4)
        .map(|n| spectrum::cumulant(&spectrum, n))
        .collect::<Result<_, _>>()?;
    let series = BesselSeries::from_spectrum(&spectrum);
    let mut points = Vec::with_capacity(args.at.len());
    for &t in &args.at {
        let frame = shift::shift_coefficients(&series, t, 2)?;
        let rate = shift::local_rate_at(&frame)?.value;
        points.push(emit::RatePoint {
            t,
            rate,
            classification: classification(rate),
        });
    }
    let report = emit::analyze_report_json(&cumulants, &points)?;
    write_or_print(&args.output, &report)
}

fn cmd_energy(args: EnergyArgs) -> Result<(), CliError> {
    let spectrum = parse::read_spectrum(&args.spectrum)?;
    let (lo, hi) = {
        let (lo, hi) = (args.interval[0], args.interval[1]);
        if lo > hi {
            return Err(CliError::config(format!(
                "interval must be well-ordered, got [{lo}, {hi}]"
            )));
        }
        (lo, hi)
    };
    if args.grid < 2 {
        return Err(CliError::config("--grid must be at least 2"));
    }
    if args.n_trunc < spectrum.len() {
        return Err(CliError::config(format!(
            "--n-trunc must cover the {} spectrum coefficients",
            spectrum.len()
        )));
    }
    let report = energy::energy_report(&spectrum, lo, hi, args.grid, args.n_trunc)?;
    let bound_satisfied = report.fraction <= report.bound + 1e-9;
    let json = emit::energy_report_json(&report, bound_satisfied)?;
    write_or_print(&args.output, &json)
}

fn cmd_basis_dump(args: BasisDumpArgs) -> Result<(), CliError> {
    let orders = parse::parse_orders(&args.orders).map_err(CliError::config)?;
    if orders.is_empty() {
        return Err(CliError::config("--orders selected nothing"));
    }
    if args.grid < 2 {
        return Err(CliError::config("--grid must be at least 2"));
    }
    let (default_range, prefix): ((f64, f64), &str) = match args.family {
        BasisFamily::Legendre => ((-1.0, 1.0), "P"),
        BasisFamily::SphBessel => ((0.0, 10.0), "j"),
        BasisFamily::Zernike => ((0.0, 1.0), "R"),
        BasisFamily::BesselJ => ((0.0, 10.0), "J"),
    };
    let (lo, hi) = match &args.range {
        Some(values) => interval_pair(values)?,
        None => default_range,
    };
    if args.family == BasisFamily::Zernike && orders.iter().any(|&n| n % 2 == 1) {
        return Err(CliError::config(
            "zernike orders must be even (odd radial orders vanish identically)",
        ));
    }

    let header: Vec<String> = std::iter::once("x".to_string())
        .chain(orders.iter().map(|n| format!("{prefix}{n}")))
        .collect();
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut rows = Vec::with_capacity(args.grid);
    for k in 0..args.grid {
        let x = lo + (hi - lo) * k as f64 / (args.grid - 1) as f64;
        let mut row = Vec::with_capacity(orders.len() + 1);
        row.push(x);
        for &n in &orders {
            let value = match args.family {
                BasisFamily::Legendre => {
                    superosc::basis::legendre(n, x).map_err(CliError::from_config_error)?
                }
                BasisFamily::SphBessel => superosc::basis::spherical_bessel(n, x),
                BasisFamily::Zernike => {
                    superosc::basis::zernike_radial(n, x).map_err(CliError::from_config_error)?
                }
                BasisFamily::BesselJ => {
                    if x < 0.0 {
                        return Err(CliError::config("bessel-j expects x >= 0"));
                    }
                    superosc::basis::bessel_j(n, x)
                }
            };
            row.push(value);
        }
        rows.push(row);
    }
    let csv = emit::csv(&header_refs, &rows)?;
    write_or_print(&args.output, &csv)
}
