//! Special functions used by the outage-probability series.
//!
//! Everything here works in `f64`. Functions that can overflow for the
//! parameter ranges produced by long series also come in a `ln_` flavour.

// `!(x > 0.0)` also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bessel;
pub mod gamma;
pub mod meijer;
pub mod oracle;
pub mod quad;
pub mod whittaker;

pub use bessel::{bessel_i0, bessel_i0_scaled, bessel_j1, bessel_j3, bessel_jn, bessel_k, ln_bessel_k};
pub use gamma::{
    delta_gamma, ln_delta_gamma, ln_gamma, ln_lower_gamma, ln_upper_gamma,
    regularized_upper_gamma, upper_gamma,
};
pub use meijer::{meijer_g, MeijerG, MeijerInstance};
pub use quad::{adaptive_gk, gauss_legendre, CgqRule};
pub use whittaker::whittaker_w;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecfunError {
    #[error("{function}: argument outside domain ({detail})")]
    Domain { function: &'static str, detail: String },
    #[error("{function}: no convergence after {iterations} iterations")]
    NoConvergence { function: &'static str, iterations: usize },
    #[error("{function}: non-finite value at {at}")]
    NonFinite { function: &'static str, at: f64 },
}

pub type Result<T> = std::result::Result<T, SpecfunError>;

pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> SpecfunError {
    SpecfunError::Domain { function, detail: detail.into() }
}
