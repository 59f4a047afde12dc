//! Outage probability of the ground-user and aerial-receiver links, evaluated
//! either by the finite/infinite series representation or by direct nested
//! quadrature, plus the average throughput built on top of both.

pub mod closed;
pub mod integral;
pub mod link;
pub mod throughput;

pub use closed::{closed_outage, Diagnostics, SeriesOptions, SeriesReport};
pub use integral::{integral_outage, IntegralOptions};
pub use link::{DerivedCoefficients, LinkProblem, SecondHop};
pub use throughput::{avg_throughput, throughput_from_outages, Throughput};

use sagin_model::{ModelError, Network, Scenario};
use specfun::SpecfunError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalyticError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Special(#[from] SpecfunError),
    #[error("{series}: no convergence after {terms} terms (partial sum {partial})")]
    NoConvergence { series: &'static str, terms: usize, partial: f64 },
    #[error("{what}: non-finite intermediate value")]
    NonFinite { what: &'static str },
}

pub type Result<T> = std::result::Result<T, AnalyticError>;

/// How an outage probability is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Series representation; needs integer fading severities.
    Closed,
    /// Nested adaptive quadrature over the raw densities.
    Integral,
}

/// An outage probability with what the evaluation reported along the way.
#[derive(Debug, Clone, PartialEq)]
pub struct Outage {
    pub value: f64,
    /// Success probability through the unsaturated harvester branch, when
    /// the method separates the two branches.
    pub linear_success: Option<f64>,
    pub saturated_success: Option<f64>,
    pub diagnostics: Diagnostics,
}

impl Outage {
    pub(crate) fn exact(value: f64, note: &str) -> Self {
        let mut diagnostics = Diagnostics::default();
        diagnostics.notes.push(note.to_string());
        Self { value, linear_success: None, saturated_success: None, diagnostics }
    }
}

/// Outage probability of `network` under `scenario`.
pub fn outage(scenario: &Scenario, network: Network, method: Method) -> Result<Outage> {
    scenario.validate()?;
    let link = LinkProblem::new(scenario, network)?;
    match method {
        Method::Closed => closed_outage(&link, &SeriesOptions::default()),
        Method::Integral => integral_outage(&link, &IntegralOptions::default()),
    }
}
