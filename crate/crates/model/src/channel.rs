//! Link fading laws (channel power gains) and the satellite link budget.

use crate::{db_to_linear, require, ModelError, Result};
use rand::Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};
use specfun::{bessel_i0_scaled, bessel_j1, bessel_j3, ln_gamma, regularized_upper_gamma};

pub const BOLTZMANN: f64 = 1.38e-23;

/// Tail `Pr[G > t] = e^{−λt} Σ_n W_n (λt)^n / n!`, a mixture of gamma tails.
/// Nakagami-m with integer m has `λ = m`, `W_n = 1` for `n < m`; Rician has
/// `λ = 1 + K` and `W_n = Pr[Poisson(K) ≥ n]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TailMixture {
    pub rate: f64,
    pub weights: Vec<f64>,
}

impl TailMixture {
    pub fn tail(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 1.0;
        }
        if t == f64::INFINITY {
            return 0.0;
        }
        let lt = self.rate * t;
        let mut pmf = (-lt).exp();
        let mut acc = 0.0;
        for (n, w) in self.weights.iter().enumerate() {
            if n > 0 {
                pmf *= lt / n as f64;
            }
            acc += w * pmf;
        }
        acc
    }
}

/// Shadowed-Rician power gain: Nakagami-distributed line of sight plus
/// Rayleigh scatter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShadowedRician {
    severity: f64,
    half_scatter: f64,
    los_power: f64,
}

impl ShadowedRician {
    /// `severity` m, `half_scatter` b (half the scatter power), `los_power` Ω.
    pub fn new(severity: f64, half_scatter: f64, los_power: f64) -> Result<Self> {
        require(severity > 0.0 && severity.is_finite(), "m_sr", severity, "must be positive")?;
        require(half_scatter > 0.0 && half_scatter.is_finite(), "b_sr", half_scatter, "must be positive")?;
        require(los_power >= 0.0 && los_power.is_finite(), "omega_sr", los_power, "must be non-negative")?;
        Ok(Self { severity, half_scatter, los_power })
    }

    pub fn severity(&self) -> f64 {
        self.severity
    }

    pub fn integer_severity(&self) -> Result<u32> {
        let m = self.severity;
        if m.fract() == 0.0 && m >= 1.0 && m <= u32::MAX as f64 {
            Ok(m as u32)
        } else {
            Err(ModelError::NonIntegerSeverity { name: "m_sr", value: m })
        }
    }

    fn two_bm(&self) -> f64 {
        2.0 * self.half_scatter * self.severity
    }

    pub fn alpha(&self) -> f64 {
        (self.two_bm() / (self.two_bm() + self.los_power)).powf(self.severity) / (2.0 * self.half_scatter)
    }

    pub fn beta(&self) -> f64 {
        1.0 / (2.0 * self.half_scatter)
    }

    pub fn delta(&self) -> f64 {
        self.los_power / (2.0 * self.half_scatter * (self.two_bm() + self.los_power))
    }

    /// Decay rate `β − δ` of the finite-sum form.
    pub fn beta_bar(&self) -> f64 {
        self.beta() - self.delta()
    }

    pub fn mean(&self) -> f64 {
        2.0 * self.half_scatter + self.los_power
    }

    /// `ζ(k) = (−1)^k (1−m)_k δ^k / (k!)²` for `k < m`.
    pub fn zeta(&self) -> Result<Vec<f64>> {
        let m = self.integer_severity()? as usize;
        let d = self.delta();
        let mut out = Vec::with_capacity(m);
        let mut z = 1.0;
        for k in 0..m {
            if k > 0 {
                let kf = k as f64;
                // ratio of consecutive terms: −(1 − m + k − 1) δ / k²
                z *= -(kf - self.severity) * d / (kf * kf);
            }
            out.push(z);
        }
        Ok(out)
    }

    /// Density of the power gain. Integer severity uses the finite sum; any
    /// other positive severity uses `α e^{−βx} ₁F₁(m; 1; δx)`.
    pub fn pdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        if let Ok(z) = self.zeta() {
            let poly: f64 = z.iter().rev().fold(0.0, |acc, c| acc * x + c);
            return self.alpha() * poly * (-self.beta_bar() * x).exp();
        }
        // ₁F₁ series, all terms positive; summed relative to its largest term.
        let (m, dx) = (self.severity, self.delta() * x);
        let ln_base = self.alpha().ln() - self.beta() * x;
        let mut ln_terms = vec![0.0];
        let mut ln_t = 0.0;
        let mut k = 0.0;
        loop {
            k += 1.0;
            ln_t += ((m + k - 1.0) * dx).ln() - 2.0 * k.ln();
            ln_terms.push(ln_t);
            let top = ln_terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if (k > m + dx && ln_t < top - 40.0) || k > 10_000.0 || dx == 0.0 {
                break;
            }
        }
        let top = ln_terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let sum: f64 = ln_terms.iter().map(|t| (t - top).exp()).sum();
        (ln_base + top + sum.ln()).exp()
    }

    /// `|A + Z|²` with `A²` gamma (shape m, mean Ω) and `Z` circular Gaussian of power `2b`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let los = if self.los_power > 0.0 {
            Gamma::new(self.severity, self.los_power / self.severity).expect("validated parameters").sample(rng).sqrt()
        } else {
            0.0
        };
        let s = self.half_scatter.sqrt();
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        (los + s * re).powi(2) + (s * im).powi(2)
    }
}

/// Unit-mean Nakagami-m power gain with its path-loss exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Nakagami {
    pub severity: f64,
    pub path_loss: f64,
}

impl Nakagami {
    pub fn new(severity: f64, path_loss: f64) -> Result<Self> {
        require(severity >= 0.5 && severity.is_finite(), "m_rd", severity, "must be at least 1/2")?;
        require(path_loss > 0.0 && path_loss.is_finite(), "nu_rd", path_loss, "must be positive")?;
        Ok(Self { severity, path_loss })
    }

    pub fn pdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        let m = self.severity;
        if x == 0.0 {
            return if m == 1.0 { 1.0 } else if m < 1.0 { f64::INFINITY } else { 0.0 };
        }
        (m * m.ln() - ln_gamma(m) + (m - 1.0) * x.ln() - m * x).exp()
    }

    pub fn tail(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 1.0;
        }
        regularized_upper_gamma(self.severity, self.severity * t).unwrap_or(0.0)
    }

    /// Available for integer severity only.
    pub fn tail_mixture(&self) -> Result<TailMixture> {
        let m = self.severity;
        if m.fract() != 0.0 || m < 1.0 {
            return Err(ModelError::NonIntegerSeverity { name: "m_rd", value: m });
        }
        Ok(TailMixture { rate: m, weights: vec![1.0; m as usize] })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        Gamma::new(self.severity, 1.0 / self.severity).expect("validated parameters").sample(rng)
    }
}

/// Unit-mean Rician power gain with its path-loss exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rician {
    pub k_factor: f64,
    pub path_loss: f64,
}

const MIXTURE_CUTOFF: f64 = 1e-16;

impl Rician {
    pub fn new(k_factor: f64, path_loss: f64) -> Result<Self> {
        require(k_factor >= 0.0 && k_factor.is_finite(), "k_rt", k_factor, "must be non-negative")?;
        require(path_loss > 0.0 && path_loss.is_finite(), "nu_rt", path_loss, "must be positive")?;
        Ok(Self { k_factor, path_loss })
    }

    pub fn pdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        let k = self.k_factor;
        let z = 2.0 * (k * (1.0 + k) * x).sqrt();
        let i0s = bessel_i0_scaled(z).expect("non-negative argument");
        (1.0 + k) * (-k - (1.0 + k) * x + z).exp() * i0s
    }

    pub fn tail_mixture(&self) -> TailMixture {
        let k = self.k_factor;
        // Poisson(K) probabilities far enough into the tail, then tail sums from the top.
        let mut pmf = vec![(-k).exp()];
        let mut n = 0usize;
        loop {
            n += 1;
            let next = pmf[n - 1] * k / n as f64;
            pmf.push(next);
            if n as f64 > k && next < 1e-20 {
                break;
            }
        }
        let mut weights = vec![0.0; pmf.len()];
        let mut acc = 0.0;
        for i in (0..pmf.len()).rev() {
            acc += pmf[i];
            weights[i] = acc;
        }
        weights[0] = 1.0;
        let keep = weights.iter().position(|&w| w < MIXTURE_CUTOFF).unwrap_or(weights.len());
        weights.truncate(keep.max(1));
        TailMixture { rate: 1.0 + k, weights }
    }

    pub fn tail(&self, t: f64) -> f64 {
        self.tail_mixture().tail(t)
    }

    /// `|μ + Z|²` with `|μ|² = K/(1+K)` and `Z` circular Gaussian of power `1/(1+K)`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let k = self.k_factor;
        let los = (k / (1.0 + k)).sqrt();
        let s = (0.5 / (1.0 + k)).sqrt();
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        (los + s * re).powi(2) + (s * im).powi(2)
    }
}

/// Satellite spot-beam gain towards a receiver `offset` radians off boresight.
pub fn beam_gain(offset: f64, beamwidth_3db: f64, peak_gain: f64) -> Result<f64> {
    require(offset >= 0.0 && offset.is_finite(), "offset", offset, "must be non-negative")?;
    require(beamwidth_3db > 0.0 && beamwidth_3db.is_finite(), "beamwidth_3db", beamwidth_3db, "must be positive")?;
    let rho = 2.07123 * offset.sin() / beamwidth_3db.sin();
    if rho < 1e-6 {
        return Ok(peak_gain);
    }
    Ok(peak_gain * (bessel_j1(rho) / (2.0 * rho) + 36.0 * bessel_j3(rho) / rho.powi(3)))
}

/// Satellite-to-relay link budget. Gains and rain attenuation in dB.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SatelliteLink {
    pub tx_power_w: f64,
    pub rain_db: f64,
    pub wavelength_m: f64,
    pub noise_temp_k: f64,
    pub bandwidth_hz: f64,
    pub sat_gain_db: f64,
    pub relay_gain_db: f64,
    pub offset_rad: f64,
    pub beamwidth_rad: f64,
}

impl SatelliteLink {
    pub fn validate(&self) -> Result<()> {
        require(self.tx_power_w > 0.0, "tx_power", self.tx_power_w, "must be positive")?;
        require(self.wavelength_m > 0.0, "wavelength", self.wavelength_m, "must be positive")?;
        require(self.noise_temp_k > 0.0, "noise_temperature", self.noise_temp_k, "must be positive")?;
        require(self.bandwidth_hz > 0.0, "bandwidth", self.bandwidth_hz, "must be positive")?;
        beam_gain(self.offset_rad, self.beamwidth_rad, 1.0).map(|_| ())
    }

    /// Free-space scale `ξ² λ² / ((4π)² k_B T W)`.
    pub fn free_space_scale(&self) -> Result<f64> {
        self.validate()?;
        let xi = db_to_linear(self.rain_db);
        let four_pi = 4.0 * std::f64::consts::PI;
        Ok(xi * xi * self.wavelength_m.powi(2) / (four_pi * four_pi * BOLTZMANN * self.noise_temp_k * self.bandwidth_hz))
    }

    /// Effective transmit gain `P_s C ϑ_s ϑ(θ)`.
    pub fn effective_gain(&self) -> Result<f64> {
        let beam = beam_gain(self.offset_rad, self.beamwidth_rad, db_to_linear(self.relay_gain_db))?;
        Ok(self.tx_power_w * self.free_space_scale()? * db_to_linear(self.sat_gain_db) * beam)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use specfun::adaptive_gk;

    fn heavy() -> ShadowedRician {
        ShadowedRician::new(2.0, 0.063, 0.0005).unwrap()
    }

    fn light() -> ShadowedRician {
        ShadowedRician::new(5.0, 0.251, 0.279).unwrap()
    }

    fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        adaptive_gk(f, a, b, 1e-13, 1e-13, 2000).unwrap().value
    }

    #[test]
    fn sr_pdf_at_zero_is_alpha() {
        let h = heavy();
        assert!((h.pdf(0.0) - h.alpha()).abs() < 1e-15 * h.alpha());
    }

    #[test]
    fn sr_moments_and_normalization() {
        for sr in [heavy(), light()] {
            let upper = 80.0 / sr.beta_bar();
            let mass = integrate(|x| sr.pdf(x), 0.0, upper);
            let mean = integrate(|x| x * sr.pdf(x), 0.0, upper);
            assert!((mass - 1.0).abs() < 1e-9, "mass {mass}");
            assert!((mean - sr.mean()).abs() < 1e-9, "mean {mean}");
        }
        assert!((heavy().mean() - 0.1265).abs() < 1e-12);
    }

    #[test]
    fn sr_series_form_matches_hypergeometric_form_near_integer() {
        // Severity 2 ± tiny should agree with the finite sum at severity 2.
        let exact = heavy();
        let near = ShadowedRician::new(2.0 + 1e-9, 0.063, 0.0005).unwrap();
        for &x in &[0.0, 0.05, 0.3, 1.2] {
            assert!((near.pdf(x) - exact.pdf(x)).abs() < 1e-6 * exact.pdf(x).max(1e-300));
        }
        let real = ShadowedRician::new(2.5, 0.063, 0.0005).unwrap();
        assert!(real.zeta().is_err());
        let mass = integrate(|x| real.pdf(x), 0.0, 80.0 / real.beta_bar());
        assert!((mass - 1.0).abs() < 1e-9);
    }

    #[test]
    fn sr_approaches_rician_as_severity_grows() {
        // Same LOS and scatter power; the L1 distance to the Rician law should shrink.
        let (b, omega) = (0.251, 0.279);
        let scale = 2.0 * b + omega;
        let rice = Rician::new(omega / (2.0 * b), 2.0).unwrap();
        let l1 = |m: f64| {
            let sr = ShadowedRician::new(m, b, omega).unwrap();
            integrate(|x| (sr.pdf(x) - rice.pdf(x / scale) / scale).abs(), 0.0, 40.0)
        };
        let d: Vec<f64> = [1.0, 2.0, 5.0, 20.0].iter().map(|&m| l1(m)).collect();
        assert!(d.windows(2).all(|w| w[1] < w[0]), "{d:?}");
    }

    #[test]
    fn nakagami_and_rician_closed_values() {
        let n = Nakagami::new(1.0, 2.0).unwrap();
        assert_eq!(n.pdf(0.0), 1.0);
        let r = Rician::new(0.0, 2.0).unwrap();
        for &x in &[0.0, 0.4, 3.0] {
            assert!((r.pdf(x) - (-x).exp()).abs() < 1e-15);
            assert!((r.tail(x) - (-x).exp()).abs() < 1e-15);
        }
    }

    #[test]
    fn fading_normalization_and_unit_mean() {
        for m in [1.0, 2.0, 3.0, 2.7] {
            let n = Nakagami::new(m, 2.0).unwrap();
            assert!((integrate(|x| n.pdf(x), 0.0, 60.0) - 1.0).abs() < 1e-9);
            assert!((integrate(|x| x * n.pdf(x), 0.0, 60.0) - 1.0).abs() < 1e-9);
        }
        for k in [0.0, 1.0, 2.0, 10.0] {
            let r = Rician::new(k, 2.0).unwrap();
            assert!((integrate(|x| r.pdf(x), 0.0, 60.0) - 1.0).abs() < 1e-9);
            assert!((integrate(|x| x * r.pdf(x), 0.0, 60.0) - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn tail_mixtures_match_direct_tails() {
        let n = Nakagami::new(3.0, 2.0).unwrap();
        let mix = n.tail_mixture().unwrap();
        let r = Rician::new(2.0, 2.0).unwrap();
        for &t in &[0.01, 0.5, 2.0, 7.0] {
            assert!((mix.tail(t) - n.tail(t)).abs() < 1e-14);
            let direct = integrate(|x| r.pdf(x), t, 80.0);
            assert!((r.tail(t) - direct).abs() < 1e-12, "t={t}");
        }
        assert!(Nakagami::new(2.5, 2.0).unwrap().tail_mixture().is_err());
    }

    #[test]
    fn beam_gain_limits() {
        let deg = std::f64::consts::PI / 180.0;
        assert_eq!(beam_gain(0.0, 0.3 * deg, 3.0).unwrap(), 3.0);
        let near = beam_gain(1e-5 * deg, 0.3 * deg, 3.0).unwrap();
        assert!((near - 3.0).abs() < 1e-6);
        let rho = 2.07123 * (0.8 * deg).sin() / (0.3 * deg).sin();
        assert!((rho - 5.5231).abs() < 1e-4);
        for i in 1..400 {
            let g = beam_gain(i as f64 * 0.01 * deg, 0.3 * deg, 1.0).unwrap();
            assert!(g <= 1.0 + 1e-12);
        }
    }

    fn default_link() -> SatelliteLink {
        let deg = std::f64::consts::PI / 180.0;
        SatelliteLink {
            tx_power_w: 1.0,
            rain_db: 2.0,
            wavelength_m: 0.15,
            noise_temp_k: 300.0,
            bandwidth_hz: 15e6,
            sat_gain_db: 53.45,
            relay_gain_db: 4.8,
            offset_rad: 0.8 * deg,
            beamwidth_rad: 0.3 * deg,
        }
    }

    #[test]
    fn effective_gain_scales_with_power() {
        let link = default_link();
        let g1 = link.effective_gain().unwrap();
        assert!(g1.is_finite() && g1 > 0.0);
        let g2 = SatelliteLink { tx_power_w: 2.0, ..link }.effective_gain().unwrap();
        assert!((g2 / g1 - 2.0).abs() < 1e-14);
        let no_rain = SatelliteLink { rain_db: 0.0, ..link };
        let ratio = link.free_space_scale().unwrap() / no_rain.free_space_scale().unwrap();
        assert!((ratio - db_to_linear(2.0).powi(2)).abs() < 1e-12);
        assert!(SatelliteLink { bandwidth_hz: 0.0, ..link }.effective_gain().is_err());
    }

    proptest! {
        #[test]
        fn sr_pdf_nonnegative(x in 0.0f64..30.0, m in 1u32..8, b in 0.01f64..1.0, omega in 0.0f64..2.0) {
            let sr = ShadowedRician::new(m as f64, b, omega).unwrap();
            prop_assert!(sr.pdf(x) >= 0.0);
        }
    }
}
