//! Reduction of each destination to one generic success condition.
//!
//! With `z = g·x/w² − o` for the satellite gain `x` at distance `w`, a hop
//! succeeds when `z > 0` and the second-hop gain `Y` at distance `d` clears
//!
//! * `σ²γ d^ν / z` while the harvester is unsaturated (`z ≤ knee`),
//! * `σ²γη d^ν (z + o) / (P_th g z)` once it saturates,
//!
//! where `(g, o)` is the gain/offset pair of the destination and
//! `knee = P_th g / η − o`.

use crate::Result;
use sagin_model::{IcMode, Nakagami, Network, OrbitGeometry, PiecewiseDensity, Rician, Scenario, ShadowedRician, TailMixture};
use specfun::regularized_upper_gamma;

/// Gain/offset pairs of the three success conditions and their knees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedCoefficients {
    pub harvest: f64,
    pub forwarded_noise: f64,
    pub s2g_gain: f64,
    pub s2g_offset: f64,
    pub a2a_gain: f64,
    pub a2a_offset: f64,
    /// Gain of the aerial link once the satellite component is removed; it
    /// shares `a2a_offset`.
    pub perfect_gain: f64,
}

impl DerivedCoefficients {
    pub fn new(s: &Scenario) -> Self {
        let chi = s.swipt.harvest_factor();
        let mu = s.swipt.sharing;
        let fwd = s.noise.forwarded(mu, s.swipt.power_split);
        let (gs, ga) = (s.gamma_s, s.gamma_a);
        Self {
            harvest: chi,
            forwarded_noise: fwd,
            s2g_gain: chi * s.eta_s * (mu - (1.0 - mu) * gs),
            s2g_offset: fwd * chi * gs,
            a2a_gain: chi * s.eta_s * ((1.0 - mu) - mu * ga),
            a2a_offset: fwd * chi * ga,
            perfect_gain: chi * s.eta_s * (1.0 - mu),
        }
    }

    pub fn gain_offset(&self, network: Network) -> (f64, f64) {
        match network {
            Network::S2g => (self.s2g_gain, self.s2g_offset),
            Network::A2a(IcMode::Imperfect) => (self.a2a_gain, self.a2a_offset),
            Network::A2a(IcMode::Perfect) => (self.perfect_gain, self.a2a_offset),
        }
    }
}

/// Fading of the relay-to-destination hop.
#[derive(Debug, Clone, PartialEq)]
pub enum SecondHop {
    Nakagami(Nakagami),
    Rician(Rician),
}

impl SecondHop {
    pub fn tail(&self, t: f64) -> f64 {
        match self {
            SecondHop::Nakagami(n) => {
                if t <= 0.0 {
                    1.0
                } else if t == f64::INFINITY {
                    0.0
                } else {
                    regularized_upper_gamma(n.severity, n.severity * t).unwrap_or(0.0)
                }
            }
            SecondHop::Rician(r) => r.tail(t),
        }
    }

    pub fn mixture(&self) -> Result<TailMixture> {
        Ok(match self {
            SecondHop::Nakagami(n) => n.tail_mixture()?,
            SecondHop::Rician(r) => r.tail_mixture(),
        })
    }

    pub fn path_loss(&self) -> f64 {
        match self {
            SecondHop::Nakagami(n) => n.path_loss,
            SecondHop::Rician(r) => r.path_loss,
        }
    }
}

/// One destination's success condition with every density it depends on.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkProblem {
    pub gain: f64,
    pub offset: f64,
    pub eta_s: f64,
    pub saturation: f64,
    /// Destination noise power.
    pub noise: f64,
    pub threshold: f64,
    pub hop: SecondHop,
    pub distance: PiecewiseDensity,
    pub orbit: OrbitGeometry,
    pub satellite: ShadowedRician,
}

impl LinkProblem {
    pub fn new(s: &Scenario, network: Network) -> Result<Self> {
        let (gain, offset) = DerivedCoefficients::new(s).gain_offset(network);
        let (noise, hop, distance) = match network {
            Network::S2g => (s.noise.gu, SecondHop::Nakagami(s.gu), s.cone.gu_density()),
            Network::A2a(_) => (s.noise.arx, SecondHop::Rician(s.arx), s.cone.arx_density()),
        };
        Ok(Self {
            gain,
            offset,
            eta_s: s.eta_s,
            saturation: s.swipt.saturation_w,
            noise,
            threshold: s.threshold(network),
            hop,
            distance,
            orbit: s.orbit,
            satellite: s.satellite,
        })
    }

    /// Value of `z` where the harvester saturates; infinite for a linear harvester.
    pub fn knee(&self) -> f64 {
        if self.saturation.is_infinite() {
            f64::INFINITY
        } else {
            self.saturation * self.gain / self.eta_s - self.offset
        }
    }

    /// Outage is certain when the gain is not positive.
    pub fn always_fails(&self) -> bool {
        self.gain <= 0.0
    }

    /// Second-hop gain needed for success at `(x, w, d)`.
    pub fn required_gain(&self, x: f64, w: f64, d: f64) -> f64 {
        let z = self.gain * x / (w * w) - self.offset;
        if z <= 0.0 {
            return f64::INFINITY;
        }
        let base = self.noise * self.threshold * d.powf(self.hop.path_loss());
        if z <= self.knee() {
            base / z
        } else {
            base * self.eta_s * (z + self.offset) / (self.saturation * self.gain * z)
        }
    }
}
