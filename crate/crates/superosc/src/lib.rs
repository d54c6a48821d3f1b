//! Construction, analysis and least-squares fitting of bandlimited functions
//! whose local oscillation or growth rate exceeds their band limit.
//!
//! A bandlimited signal g(t) with spectrum supported on [-1, 1] is represented
//! by its Legendre coefficients c_n, so that g̃(ω) = Σ c_n P_n(ω) and
//! g(t) = √(2/π) Σ iⁿ c_n j_n(t). The first two coefficients fix the local
//! complex rate z = g'(0)/g(0): |Im z| > 1 means the signal superoscillates,
//! |Re z| > 1 means it supergrows. The crate provides
//!
//! - [`basis`]: Legendre, spherical Bessel, Bessel J and Zernike evaluation
//!   plus Gauss-Legendre quadrature;
//! - [`spectrum`]: spectra, moments, cumulants, rate prescription and
//!   band rescaling;
//! - [`fit`]: least-squares approximation of a target on an interval in the
//!   spherical-Bessel, periodic-exponential and radial-Bessel bases;
//! - [`shift`]: expansions about arbitrary origins and local rates away from
//!   the origin;
//! - [`energy`]: cumulative/interval energies and the fractional-energy bound;
//! - [`cylindrical`]: cylindrically symmetric fields, Hankel transform and
//!   generalized local rates.
//!
//! All coefficient lists are finite; no operation claims convergence control
//! for infinite series.

// Interval checks use `!(a < b)` so NaN endpoints are rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod basis;
pub mod cylindrical;
pub mod energy;
mod error;
pub mod fit;
mod serde_util;
pub mod shift;
pub mod spectrum;

pub use error::{Error, Result};
pub use num_complex::Complex64;
