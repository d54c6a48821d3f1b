use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors surfaced by the library.
///
/// Numerical preconditions that callers can violate (domains, intervals,
/// degenerate spectra, nodes of the signal) map to dedicated variants so the
/// CLI can distinguish configuration problems from numerical failures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name}: argument {value} outside domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },
    #[error("invalid band: require omega_min < omega_max, got [{min}, {max}]")]
    InvalidBand { min: f64, max: f64 },
    #[error("invalid interval: require lower < upper, got [{lower}, {upper}]")]
    InvalidInterval { lower: f64, upper: f64 },
    #[error("degenerate spectrum: |2 c0| = {magnitude:e} is below the 1e-14 threshold")]
    DegenerateSpectrum { magnitude: f64 },
    #[error("node of the signal at t = {at}: |gamma_0| = {magnitude:e} too small for a rate query")]
    Node { at: f64, magnitude: f64 },
    #[error("non-finite entries in the linear system")]
    NonFinite,
    #[error("rcond must lie in (0, 1), got {0}")]
    InvalidRcond(f64),
    #[error("tabulated target spans [{have_lower}, {have_upper}] and does not cover [{lower}, {upper}]")]
    Coverage {
        lower: f64,
        upper: f64,
        have_lower: f64,
        have_upper: f64,
    },
    #[error("tabulated target needs at least two samples with strictly increasing coordinates")]
    InvalidTable,
    #[error("expected a series expanded about the origin, got origin {actual}")]
    WrongOrigin { actual: f64 },
    #[error("cumulant order {order} outside supported range 1..={max}")]
    CumulantOrder { order: usize, max: usize },
}
