//! Physical model of the relay network: node geometry, link fading and the
//! energy-harvesting relay with its end-to-end SNRs.

pub mod channel;
pub mod geometry;
pub mod scenario;
pub mod swipt;

pub use channel::{beam_gain, Nakagami, Rician, SatelliteLink, ShadowedRician, TailMixture};
pub use geometry::{ConeCase, ConeGeometry, Monomial, OrbitGeometry, Piece, PiecewiseDensity};
pub use scenario::{Network, Scenario};
pub use swipt::{gamma_from_rate, harvested_power, FadingDraw, IcMode, NoiseParams, RelayModel, Snrs, SwiptParams};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("{name} = {value}: {requirement}")]
    InvalidParameter { name: &'static str, value: f64, requirement: &'static str },
    #[error("{name} = {value}: series form needs an integer severity")]
    NonIntegerSeverity { name: &'static str, value: f64 },
    #[error("{0}")]
    Special(#[from] specfun::SpecfunError),
}

pub type Result<T> = std::result::Result<T, ModelError>;

/// Checks `ok` and names the offending parameter otherwise.
pub(crate) fn require(ok: bool, name: &'static str, value: f64, requirement: &'static str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(ModelError::InvalidParameter { name, value, requirement })
    }
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}
