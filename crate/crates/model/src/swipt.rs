//! Hybrid time/power-splitting harvester with saturation, and the SNRs at the
//! ground user and the aerial receiver after amplify-and-forward relaying.

use crate::{dbm_to_watts, require, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwiptParams {
    /// Conversion efficiency χ.
    pub efficiency: f64,
    /// Fraction ρ of the block spent harvesting only.
    pub time_split: f64,
    /// Fraction ε of the received power diverted to the harvester.
    pub power_split: f64,
    /// Share μ of the relay power spent forwarding the satellite signal.
    pub sharing: f64,
    /// Harvester saturation input power in watts; `f64::INFINITY` for a linear harvester.
    pub saturation_w: f64,
    pub block_s: f64,
}

impl SwiptParams {
    pub fn validate(&self) -> Result<()> {
        let e = self.efficiency;
        require(e > 0.0 && e < 1.0, "swipt.chi", e, "must lie in (0, 1)")?;
        require((0.0..1.0).contains(&self.time_split), "swipt.rho", self.time_split, "must lie in [0, 1)")?;
        require(self.power_split > 0.0 && self.power_split < 1.0, "swipt.epsilon", self.power_split, "must lie in (0, 1)")?;
        require(self.sharing > 0.0 && self.sharing <= 1.0, "swipt.mu", self.sharing, "must lie in (0, 1]")?;
        require(self.saturation_w > 0.0, "swipt.p_th", self.saturation_w, "must be positive")?;
        require(self.block_s > 0.0 && self.block_s.is_finite(), "swipt.block", self.block_s, "must be positive")?;
        Ok(())
    }

    /// `χ (2ρ/(1−ρ) + ε)`: harvested power per unit received power.
    pub fn harvest_factor(&self) -> f64 {
        self.efficiency * (2.0 * self.time_split / (1.0 - self.time_split) + self.power_split)
    }

    /// `μ / (1 − μ)`, the ceiling of the ground-user SNR.
    pub fn sharing_ratio(&self) -> f64 {
        self.sharing / (1.0 - self.sharing)
    }
}

/// Relay harvested power for satellite power gain `x` at distance `w`.
pub fn harvested_power(x: f64, w: f64, eta_s: f64, p: &SwiptParams) -> f64 {
    p.harvest_factor() * (eta_s * x / (w * w)).min(p.saturation_w)
}

/// Noise powers in watts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseParams {
    pub relay: f64,
    pub baseband: f64,
    pub gu: f64,
    pub arx: f64,
}

impl NoiseParams {
    pub fn from_dbm(relay: f64, baseband: f64, gu: f64, arx: f64) -> Self {
        Self { relay: dbm_to_watts(relay), baseband: dbm_to_watts(baseband), gu: dbm_to_watts(gu), arx: dbm_to_watts(arx) }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("noise.relay", self.relay), ("noise.baseband", self.baseband), ("noise.gu", self.gu), ("noise.arx", self.arx)] {
            require(v > 0.0 && v.is_finite(), name, v, "must be positive")?;
        }
        Ok(())
    }

    /// Relay noise forwarded to the destinations, `μ (σ_r² + σ_rb² / (1 − ε))`.
    pub fn forwarded(&self, sharing: f64, power_split: f64) -> f64 {
        sharing * (self.relay + self.baseband / (1.0 - power_split))
    }
}

/// One joint realization of the three channel power gains and distances (meters).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FadingDraw {
    pub sat_gain: f64,
    pub gu_gain: f64,
    pub arx_gain: f64,
    pub sat_distance: f64,
    pub gu_distance: f64,
    pub arx_distance: f64,
}

/// Whether the aerial receiver strips the satellite component before decoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IcMode {
    Imperfect,
    Perfect,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelayModel {
    pub eta_s: f64,
    pub swipt: SwiptParams,
    pub noise: NoiseParams,
    pub gu_path_loss: f64,
    pub arx_path_loss: f64,
}

/// Per-draw SNRs at the ground user and at the aerial receiver in both modes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Snrs {
    pub gu: f64,
    pub arx_imperfect: f64,
    pub arx_perfect: f64,
}

impl RelayModel {
    pub fn validate(&self) -> Result<()> {
        require(self.eta_s > 0.0 && self.eta_s.is_finite(), "eta_s", self.eta_s, "must be positive")?;
        require(self.gu_path_loss > 0.0, "nu_rd", self.gu_path_loss, "must be positive")?;
        require(self.arx_path_loss > 0.0, "nu_rt", self.arx_path_loss, "must be positive")?;
        self.swipt.validate()?;
        self.noise.validate()
    }

    pub fn snrs(&self, d: &FadingDraw) -> Snrs {
        let received = self.eta_s * d.sat_gain / (d.sat_distance * d.sat_distance);
        if received <= 0.0 {
            return Snrs { gu: 0.0, arx_imperfect: 0.0, arx_perfect: 0.0 };
        }
        let mu = self.swipt.sharing;
        let harvested = self.swipt.harvest_factor() * received.min(self.swipt.saturation_w);
        let fwd = self.noise.forwarded(mu, self.swipt.power_split) / received;
        let g = harvested * d.gu_gain * d.gu_distance.powf(-self.gu_path_loss);
        let h = harvested * d.arx_gain * d.arx_distance.powf(-self.arx_path_loss);
        Snrs {
            gu: mu * g / (fwd * g + (1.0 - mu) * g + self.noise.gu),
            arx_imperfect: (1.0 - mu) * h / (fwd * h + mu * h + self.noise.arx),
            arx_perfect: (1.0 - mu) * h / (fwd * h + self.noise.arx),
        }
    }

    pub fn snr_gu(&self, d: &FadingDraw) -> f64 {
        self.snrs(d).gu
    }

    pub fn snr_arx(&self, d: &FadingDraw, mode: IcMode) -> f64 {
        let s = self.snrs(d);
        match mode {
            IcMode::Imperfect => s.arx_imperfect,
            IcMode::Perfect => s.arx_perfect,
        }
    }
}

/// SNR threshold `2^{2r/(1−ρ)} − 1` for a target rate `r` under time split `ρ`.
pub fn gamma_from_rate(rate: f64, time_split: f64) -> Result<f64> {
    require((0.0..1.0).contains(&time_split), "swipt.rho", time_split, "must lie in [0, 1)")?;
    require(rate >= 0.0 && rate.is_finite(), "rate", rate, "must be non-negative")?;
    Ok((2.0 * rate / (1.0 - time_split)).exp2() - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn swipt() -> SwiptParams {
        SwiptParams {
            efficiency: 0.6,
            time_split: 0.4,
            power_split: 0.4,
            sharing: 0.7,
            saturation_w: dbm_to_watts(10.0),
            block_s: 1.0,
        }
    }

    fn model(eta_s: f64, saturation_w: f64, sharing: f64) -> RelayModel {
        RelayModel {
            eta_s,
            swipt: SwiptParams { saturation_w, sharing, ..swipt() },
            noise: NoiseParams::from_dbm(-50.0, -50.0, -50.0, -50.0),
            gu_path_loss: 2.0,
            arx_path_loss: 2.0,
        }
    }

    fn draw(x: f64, y: f64, z: f64) -> FadingDraw {
        FadingDraw { sat_gain: x, gu_gain: y, arx_gain: z, sat_distance: 1.0e6, gu_distance: 820.0, arx_distance: 450.0 }
    }

    #[test]
    fn harvest_factor_and_saturation() {
        let p = swipt();
        assert!((p.harvest_factor() - 1.04).abs() < 1e-12);
        let w = 1.0e6;
        let x = 2.0 * p.saturation_w * w * w / 1e12;
        assert!((harvested_power(x, w, 1e12, &p) - 1.04 * p.saturation_w).abs() < 1e-15);
        let linear = SwiptParams { saturation_w: f64::INFINITY, ..p };
        assert!((harvested_power(x, w, 1e12, &linear) - 1.04 * 2.0 * p.saturation_w).abs() < 1e-14);
    }

    #[test]
    fn rate_thresholds() {
        assert_eq!(gamma_from_rate(0.0, 0.4).unwrap(), 0.0);
        assert!((gamma_from_rate(0.5, 0.4).unwrap() - 2.1748).abs() < 1e-4);
        assert!(gamma_from_rate(0.1, 1.0).is_err());
    }

    #[test]
    fn snr_limits() {
        let m = model(1e12, f64::INFINITY, 0.7);
        let big = m.snrs(&draw(1e9, 1.0, 1.0));
        assert!((big.gu - 0.7 / 0.3).abs() < 1e-3);
        assert!((big.arx_imperfect - 0.3 / 0.7).abs() < 1e-3);
        assert_eq!(m.snr_gu(&draw(1.0, 0.0, 1.0)), 0.0);
        assert_eq!(m.snr_gu(&draw(0.0, 1.0, 1.0)), 0.0);
        let full = model(1e12, dbm_to_watts(10.0), 1.0).snrs(&draw(0.3, 1.0, 1.0));
        assert_eq!(full.arx_imperfect, 0.0);
        assert_eq!(full.arx_perfect, 0.0);
    }

    #[test]
    fn snrs_match_branch_formulas() {
        // Saturated branch written out with the threshold multiplied through.
        let m = model(1e14, dbm_to_watts(10.0), 0.7);
        let d = draw(0.8, 1.3, 0.6);
        let s = m.eta_s * d.sat_gain / d.sat_distance.powi(2);
        assert!(s > m.swipt.saturation_w);
        let (chi, p, mu) = (m.swipt.harvest_factor(), m.swipt.saturation_w, m.swipt.sharing);
        let mu_eps = m.noise.forwarded(mu, m.swipt.power_split);
        let g = d.gu_gain * d.gu_distance.powi(-2);
        let expect = mu * chi * p * s * g / (mu_eps * chi * p * g + (1.0 - mu) * chi * s * p * g + s * m.noise.gu);
        assert!((m.snr_gu(&d) - expect).abs() < 1e-12 * expect);
    }

    proptest! {
        #[test]
        fn snr_orderings_and_ceilings(
            x in 0.0f64..20.0, y in 0.0f64..20.0, z in 0.0f64..20.0,
            eta_db in 90.0f64..180.0, mu in 0.05f64..0.95, sat in prop::bool::ANY,
        ) {
            let p_th = if sat { dbm_to_watts(10.0) } else { f64::INFINITY };
            let m = model(10f64.powf(eta_db / 10.0), p_th, mu);
            let s = m.snrs(&draw(x, y, z));
            prop_assert!(s.arx_perfect >= s.arx_imperfect);
            prop_assert!(s.gu <= mu / (1.0 - mu) * (1.0 + 1e-12));
            prop_assert!(s.arx_imperfect <= (1.0 - mu) / mu * (1.0 + 1e-12));
            let more = m.snr_gu(&draw(x, y * 1.5 + 1e-3, z));
            if x > 0.0 {
                prop_assert!(more > s.gu);
            }
        }

        #[test]
        fn harvest_is_monotone_and_flat_past_the_knee(x1 in 0.0f64..10.0, dx in 0.0f64..10.0) {
            let p = swipt();
            let (a, b) = (harvested_power(x1, 1e6, 1e12, &p), harvested_power(x1 + dx, 1e6, 1e12, &p));
            prop_assert!(b >= a);
            prop_assert!(b <= p.harvest_factor() * p.saturation_w);
        }

        #[test]
        fn threshold_increases_with_time_split(r in 0.01f64..2.0, rho in 0.0f64..0.9) {
            prop_assert!(gamma_from_rate(r, rho + 0.05).unwrap() > gamma_from_rate(r, rho).unwrap());
        }
    }
}
