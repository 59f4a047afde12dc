//! Reference evaluation by nested adaptive Gauss–Kronrod quadrature over the
//! satellite distance, the second-hop distance and the satellite gain.
//! Works for any positive fading severities.

use crate::{AnalyticError, LinkProblem, Outage, Result, SecondHop};
use specfun::{adaptive_gk, SpecfunError};
use std::cell::RefCell;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralOptions {
    /// Absolute tolerance of the outer integral; inner levels are tighter.
    pub abs_tol: f64,
    pub max_intervals: usize,
}

impl Default for IntegralOptions {
    fn default() -> Self {
        Self { abs_tol: 1e-8, max_intervals: 500 }
    }
}

/// Satellite gain density with the finite-sum coefficients cached when the
/// severity is an integer.
enum GainDensity<'a> {
    Finite { alpha: f64, decay: f64, zeta: Vec<f64> },
    General(&'a sagin_model::ShadowedRician),
}

impl GainDensity<'_> {
    fn pdf(&self, x: f64) -> f64 {
        match self {
            GainDensity::Finite { alpha, decay, zeta } => {
                alpha * zeta.iter().rev().fold(0.0, |acc, c| acc * x + c) * (-decay * x).exp()
            }
            GainDensity::General(sr) => sr.pdf(x),
        }
    }
}

enum Tail {
    Mixture(sagin_model::TailMixture),
    Exact(SecondHop),
}

impl Tail {
    fn at(&self, t: f64) -> f64 {
        match self {
            Tail::Mixture(m) => m.tail(t),
            Tail::Exact(h) => h.tail(t),
        }
    }
}

pub fn integral_outage(link: &LinkProblem, opts: &IntegralOptions) -> Result<Outage> {
    if link.always_fails() {
        return Ok(Outage::exact(1.0, "threshold at or above the SNR ceiling"));
    }
    if link.threshold == 0.0 {
        return Ok(Outage::exact(0.0, "zero threshold"));
    }
    let sat = &link.satellite;
    let density = match sat.zeta() {
        Ok(zeta) => GainDensity::Finite { alpha: sat.alpha(), decay: sat.beta_bar(), zeta },
        Err(_) => GainDensity::General(sat),
    };
    let tail = match link.hop.mixture() {
        Ok(m) => Tail::Mixture(m),
        Err(_) => Tail::Exact(link.hop.clone()),
    };
    // Gain range beyond which the satellite density is negligible.
    let span = (60.0 + 10.0 * sat.severity()) / sat.beta_bar();
    let (g, o, knee) = (link.gain, link.offset, link.knee());
    let nu = link.hop.path_loss();
    let lin_scale = link.noise * link.threshold;
    let sat_scale = if knee.is_finite() { lin_scale * link.eta_s / (link.saturation * g) } else { 0.0 };
    let (inner_tol, middle_tol) = (opts.abs_tol * 1e-3, opts.abs_tol * 1e-2);
    let failure: RefCell<Option<SpecfunError>> = RefCell::new(None);
    let record = |e: SpecfunError| {
        failure.borrow_mut().get_or_insert(e);
    };

    let given_wd = |w: f64, d: f64| -> f64 {
        let w2 = w * w;
        let x_lo = o * w2 / g;
        let dn = d.powf(nu);
        let mut total = 0.0;
        let mut upper_from = x_lo;
        if knee > 0.0 {
            let x_knee = if knee.is_finite() { (knee + o) * w2 / g } else { x_lo + span };
            let f = |x: f64| {
                let z = g * x / w2 - o;
                if z <= 0.0 {
                    0.0
                } else {
                    density.pdf(x) * tail.at(lin_scale * dn / z)
                }
            };
            match adaptive_gk(f, x_lo, x_knee, inner_tol, 1e-10, opts.max_intervals) {
                Ok(v) => total += v.value,
                Err(e) => record(e),
            }
            upper_from = x_knee;
        }
        if knee.is_finite() {
            let f = |x: f64| {
                let z = g * x / w2 - o;
                if z <= 0.0 {
                    0.0
                } else {
                    density.pdf(x) * tail.at(sat_scale * dn * (z + o) / z)
                }
            };
            match adaptive_gk(f, upper_from, upper_from + span, inner_tol, 1e-10, opts.max_intervals) {
                Ok(v) => total += v.value,
                Err(e) => record(e),
            }
        }
        total
    };

    let pieces = link.distance.pieces();
    let given_w = |w: f64| -> f64 {
        let mut acc = 0.0;
        for piece in pieces {
            let f = |d: f64| piece.eval(d) * given_wd(w, d);
            match adaptive_gk(f, piece.lo, piece.hi, middle_tol, 1e-9, opts.max_intervals) {
                Ok(v) => acc += v.value,
                Err(e) => record(e),
            }
        }
        acc * link.orbit.pdf(w).unwrap_or(0.0)
    };
    let success = adaptive_gk(given_w, link.orbit.min_distance(), link.orbit.max_distance(), opts.abs_tol, 1e-9, opts.max_intervals);
    if let Some(e) = failure.into_inner() {
        return Err(e.into());
    }
    let success = success?.value;
    if !success.is_finite() {
        return Err(AnalyticError::NonFinite { what: "nested quadrature" });
    }
    let raw = 1.0 - success;
    let value = raw.clamp(0.0, 1.0);
    let mut out = Outage::exact(value, "nested adaptive quadrature");
    out.diagnostics.clamped_by = (raw - value).abs();
    Ok(out)
}
