//! The four Meijer-G instances needed by the outage series.
//!
//! None of them is evaluated from the Mellin–Barnes contour directly; each has a
//! representation with a positive integrand or a sum of positive terms:
//!
//! - `G^{0,1}_{1,0}(x | 1; −) = e^{−1/x}`
//! - `G^{2,0}_{0,2}(x | −; v/2, −v/2) = 2 K_v(2√x)`
//! - `G^{2,1}_{2,3}(x | 1−a, 1+s; s, 0, −a) = [x^s Γ(−s, x) + x^{−a} γ(a, x)] / (a + s)`
//! - `G^{2,1}_{1,3}(x | 1−a; s, −s, −a) = 4 (4x)^{−a} ∫_0^{2√x} t^{2a−1} K_{2s}(t) dt`
//!
//! The last one becomes `∫_0^∞ cosh(2su) cosh(u)^{−2a} γ(2a, 2√x cosh u) du` after
//! swapping with the integral form of `K`. That integrand is even and entire in `u`,
//! so the trapezoid rule converges geometrically.
//!
//! Both contour instances need the left pole `−a` strictly left of the right
//! poles, which is also the convergence condition of the integrals above.

use crate::bessel::ln_bessel_k;
use crate::gamma::{ln_lower_gamma, ln_upper_gamma};
use crate::{domain, Result, SpecfunError};
use std::f64::consts::LN_2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeijerInstance {
    /// `G^{0,1}_{1,0}(x | 1; −)`
    Exp,
    /// `G^{2,0}_{0,2}(x | −; v/2, −v/2)`
    Bessel { v: f64 },
    /// `G^{2,1}_{2,3}(x | 1−a, 1+s; s, 0, −a)`
    G2123 { s: f64, a: f64 },
    /// `G^{2,1}_{1,3}(x | 1−a; s, −s, −a)`
    G2113 { s: f64, a: f64 },
}

/// A validated instance; construction rejects overlapping pole families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeijerG {
    instance: MeijerInstance,
}

fn ln_add(a: f64, b: f64) -> f64 {
    let m = a.max(b);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + ((a - m).exp() + (b - m).exp()).ln()
}

/// `ln cosh u` without overflow.
fn ln_cosh(u: f64) -> f64 {
    let u = u.abs();
    u + (-2.0 * u).exp().ln_1p() - LN_2
}

impl MeijerG {
    pub fn new(instance: MeijerInstance) -> Result<Self> {
        let finite = |v: &[f64]| v.iter().all(|p| p.is_finite());
        let ok = match instance {
            MeijerInstance::Exp => true,
            MeijerInstance::Bessel { v } => finite(&[v]),
            MeijerInstance::G2123 { s, a } => finite(&[s, a]) && -a < s.min(0.0),
            MeijerInstance::G2113 { s, a } => finite(&[s, a]) && -a < -s.abs(),
        };
        if !ok {
            return Err(domain("meijer_g", format!("{instance:?}: pole families overlap or parameters not finite")));
        }
        Ok(Self { instance })
    }

    pub fn instance(&self) -> MeijerInstance {
        self.instance
    }

    /// `(ln |G(x)|, sign)`; the log form avoids overflow for extreme parameters.
    pub fn ln_eval(&self, x: f64) -> Result<(f64, f64)> {
        if !(x > 0.0) || !x.is_finite() {
            return Err(domain("meijer_g", format!("x={x}")));
        }
        let lx = x.ln();
        let ln_value = match self.instance {
            MeijerInstance::Exp => -1.0 / x,
            MeijerInstance::Bessel { v } => LN_2 + ln_bessel_k(v, 2.0 * x.sqrt())?,
            MeijerInstance::G2123 { s, a } => {
                let upper = s * lx + ln_upper_gamma(-s, x)?;
                let lower = -a * lx + ln_lower_gamma(a, x)?;
                ln_add(upper, lower) - (a + s).ln()
            }
            MeijerInstance::G2113 { s, a } => 2.0 * LN_2 - a * (2.0 * LN_2 + lx) + ln_bessel_moment(2.0 * s, a, x)?,
        };
        Ok((ln_value, 1.0))
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        self.ln_eval(x).map(|(l, s)| s * l.exp())
    }
}

/// `ln ∫_0^{2√x} t^{2a−1} K_ν(t) dt` for `a > |ν|/2`.
fn ln_bessel_moment(nu: f64, a: f64, x: f64) -> Result<f64> {
    let nu = nu.abs();
    let top = 2.0 * x.sqrt();
    let ln_top = top.ln();
    let log_f = |u: f64| -> Result<f64> {
        let lc = ln_cosh(u);
        Ok(ln_cosh(nu * u) - 2.0 * a * lc + ln_lower_gamma(2.0 * a, (ln_top + lc).exp())?)
    };
    // Running sum of e^{log_f} as (peak, sum relative to peak).
    let mut peak = log_f(0.0)? - LN_2;
    let mut sum = 1.0;
    let mut peak_at = 0.0;
    let add = |v: f64, peak: &mut f64, sum: &mut f64| {
        if v > *peak {
            *sum = *sum * (*peak - v).exp() + 1.0;
            *peak = v;
        } else {
            *sum += (v - *peak).exp();
        }
    };
    // Adds f at start, start + step, … until the terms past the peak are negligible.
    let mut sweep = |start: f64, step: f64, peak: &mut f64, sum: &mut f64| -> Result<()> {
        let mut quiet = 0;
        let mut k = 0usize;
        while quiet < 4 {
            let u = start + k as f64 * step;
            let v = log_f(u)?;
            if v > *peak {
                peak_at = u;
            }
            add(v, peak, sum);
            quiet = if u > peak_at && v < *peak - 40.0 { quiet + 1 } else { 0 };
            k += 1;
            if k > 1_000_000 {
                return Err(SpecfunError::NoConvergence { function: "meijer_g", iterations: k });
            }
        }
        Ok(())
    };
    let mut h = 0.25;
    sweep(h, h, &mut peak, &mut sum)?;
    let mut value = peak + (h * sum).ln();
    for _ in 0..8 {
        // Halving the step only adds the odd nodes.
        sweep(0.5 * h, h, &mut peak, &mut sum)?;
        h *= 0.5;
        let refined = peak + (h * sum).ln();
        // Converged once the log changes by no more than rounding of its own size.
        let done = (refined - value).abs() <= 1e-14 + 8.0 * f64::EPSILON * refined.abs();
        value = refined;
        if done {
            return Ok(value);
        }
    }
    Err(SpecfunError::NoConvergence { function: "meijer_g", iterations: 8 })
}

/// One-shot evaluation.
pub fn meijer_g(instance: MeijerInstance, x: f64) -> Result<f64> {
    MeijerG::new(instance)?.eval(x)
}
