//! A complete parameter set for one operating point.

use crate::{
    gamma_from_rate, require, ConeGeometry, FadingDraw, IcMode, Nakagami, NoiseParams, OrbitGeometry, RelayModel, Result,
    Rician, ShadowedRician, SwiptParams,
};
use rand::Rng;

/// Which destination an outage refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Network {
    /// Satellite-to-ground user.
    S2g,
    /// Relay-to-aerial receiver.
    A2a(IcMode),
}

/// Everything needed to evaluate one outage point. Lengths in meters.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub orbit: OrbitGeometry,
    pub cone: ConeGeometry,
    pub satellite: ShadowedRician,
    pub gu: Nakagami,
    pub arx: Rician,
    pub eta_s: f64,
    pub swipt: SwiptParams,
    pub noise: NoiseParams,
    /// SNR thresholds at the ground user and the aerial receiver.
    pub gamma_s: f64,
    pub gamma_a: f64,
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        self.relay().validate()?;
        require(self.gamma_s >= 0.0 && self.gamma_s.is_finite(), "gamma_s", self.gamma_s, "must be non-negative")?;
        require(self.gamma_a >= 0.0 && self.gamma_a.is_finite(), "gamma_a", self.gamma_a, "must be non-negative")
    }

    pub fn relay(&self) -> RelayModel {
        RelayModel {
            eta_s: self.eta_s,
            swipt: self.swipt,
            noise: self.noise,
            gu_path_loss: self.gu.path_loss,
            arx_path_loss: self.arx.path_loss,
        }
    }

    /// Sets both thresholds from target rates under the current time split.
    pub fn with_rates(mut self, rate_s: f64, rate_a: f64) -> Result<Self> {
        self.gamma_s = gamma_from_rate(rate_s, self.swipt.time_split)?;
        self.gamma_a = gamma_from_rate(rate_a, self.swipt.time_split)?;
        Ok(self)
    }

    pub fn threshold(&self, network: Network) -> f64 {
        match network {
            Network::S2g => self.gamma_s,
            Network::A2a(_) => self.gamma_a,
        }
    }

    /// One joint draw. Consumes the generator in a fixed order: three
    /// distances, then the three gains.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> FadingDraw {
        let sat_distance = self.orbit.sample(rng);
        let gu_distance = self.cone.sample_gu(rng);
        let arx_distance = self.cone.sample_arx(rng);
        FadingDraw {
            sat_gain: self.satellite.sample(rng),
            gu_gain: self.gu.sample(rng),
            arx_gain: self.arx.sample(rng),
            sat_distance,
            gu_distance,
            arx_distance,
        }
    }
}

impl Default for Scenario {
    /// Heavy shadowing, 120 dB satellite scale, 10 dBm saturation and 0.1
    /// bit/s/Hz targets at both destinations.
    fn default() -> Self {
        let swipt = SwiptParams {
            efficiency: 0.6,
            time_split: 0.4,
            power_split: 0.4,
            sharing: 0.7,
            saturation_w: crate::dbm_to_watts(10.0),
            block_s: 1.0,
        };
        let gamma = gamma_from_rate(0.1, swipt.time_split).expect("valid default rate");
        Self {
            orbit: OrbitGeometry::new(6_371_000.0, 800.0, 400_000.0).expect("valid default orbit"),
            cone: ConeGeometry::new(800.0, 250.0, 400.0, 500.0, std::f64::consts::PI / 12.0).expect("valid default cone"),
            satellite: ShadowedRician::new(2.0, 0.063, 0.0005).expect("valid default shadowing"),
            gu: Nakagami { severity: 2.0, path_loss: 2.0 },
            arx: Rician { k_factor: 1.0, path_loss: 2.0 },
            eta_s: crate::db_to_linear(120.0),
            swipt,
            noise: NoiseParams::from_dbm(-50.0, -50.0, -50.0, -50.0),
            gamma_s: gamma,
            gamma_a: gamma,
        }
    }
}
