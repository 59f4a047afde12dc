//! Series evaluation of the outage probability.
//!
//! The satellite gain density is `α Σ_k ζ_k x^k e^{−β̄x}`, the second-hop
//! tail a gamma-tail mixture `e^{−λt} Σ_n W_n (λt)^n/n!` and the distance
//! densities piecewise monomials, so after substituting `z = g x/w² − o`
//! every inner integral is an incomplete gamma, a Bessel-K moment or one of
//! their Meijer-G antiderivatives. Remaining infinite sums are truncated
//! adaptively and the satellite-distance integral, where needed, uses
//! Chebyshev–Gauss quadrature.
//!
//! The unsaturated branch has two equivalent forms: an expansion of
//! `e^{−sz}` (well conditioned while `β̄ w_max² knee / g` is moderate), and a
//! full-range Bessel-K term minus an upper-range correction, used otherwise.

use crate::{AnalyticError, LinkProblem, Outage, Result};
use sagin_model::{ModelError, TailMixture};
use specfun::{adaptive_gk, ln_bessel_k, ln_delta_gamma, ln_gamma, ln_upper_gamma, CgqRule, MeijerG, MeijerInstance};
use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesOptions {
    /// A term counts as negligible below this fraction of the running sum.
    pub rel_tol: f64,
    /// Negligible terms in a row before a series stops.
    pub quiet_terms: usize,
    pub max_terms: usize,
    /// Chebyshev–Gauss nodes over the satellite distance.
    pub cgq_nodes: usize,
    /// Largest `β̄ w_max² knee / g` for which the `e^{−sz}` expansion is used.
    pub expansion_limit: f64,
    /// Clamping the result into `[0, 1]` by more than this is reported.
    pub clamp_warning: f64,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        Self { rel_tol: 1e-12, quiet_terms: 3, max_terms: 200, cgq_nodes: 100, expansion_limit: 6.0, clamp_warning: 1e-6 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesReport {
    pub name: &'static str,
    pub terms: usize,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Diagnostics {
    pub series: Vec<SeriesReport>,
    pub notes: Vec<String>,
    /// How far the raw value lay outside `[0, 1]`.
    pub clamped_by: f64,
}

/// Meijer-G evaluations per series term above which the whole-range
/// saturated branch switches to quadrature over the distance.
const WHOLE_RANGE_SERIES_BUDGET: usize = 20_000;

/// `ln K_v(x)` for `v = 0, 1, …, max_order` by the upward recurrence on
/// consecutive ratios.
fn ln_bessel_k_ladder(max_order: usize, x: f64) -> specfun::Result<Vec<f64>> {
    let mut out = vec![ln_bessel_k(0.0, x)?];
    if max_order >= 1 {
        out.push(ln_bessel_k(1.0, x)?);
    }
    let mut ratio = (out.last().copied().unwrap_or(0.0) - out[0]).exp();
    for v in 1..max_order {
        ratio = 1.0 / ratio + 2.0 * v as f64 / x;
        out.push(out[v] + ratio.ln());
    }
    Ok(out)
}

/// Running sum of signed terms given as `(ln|t|, sign)`.
#[derive(Debug, Clone, Copy)]
struct LogSum {
    scale: f64,
    sum: f64,
}

impl Default for LogSum {
    fn default() -> Self {
        Self { scale: f64::NEG_INFINITY, sum: 0.0 }
    }
}

impl LogSum {
    fn add(&mut self, ln: f64, sign: f64) {
        if ln == f64::NEG_INFINITY || sign == 0.0 {
            return;
        }
        if ln > self.scale {
            self.sum = self.sum * (self.scale - ln).exp() + sign;
            self.scale = ln;
        } else {
            self.sum += sign * (ln - self.scale).exp();
        }
    }

    fn ln_abs(&self) -> f64 {
        if self.sum == 0.0 {
            f64::NEG_INFINITY
        } else {
            self.scale + self.sum.abs().ln()
        }
    }

    fn sign(&self) -> f64 {
        self.sum.signum()
    }

    fn value(&self) -> f64 {
        if self.sum == 0.0 {
            0.0
        } else {
            self.sum * self.scale.exp()
        }
    }
}

fn ln_choose(n: usize, k: usize) -> f64 {
    ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0)
}

fn ln_factorial(n: usize) -> f64 {
    ln_gamma(n as f64 + 1.0)
}

fn parity(k: usize) -> f64 {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `ln(D^e)` and the endpoint sign, skipping a zero lower limit.
fn endpoints(lo: f64, hi: f64) -> impl Iterator<Item = (f64, f64)> {
    [(hi, 1.0), (lo, -1.0)].into_iter().filter(|(d, _)| *d > 0.0)
}

struct Engine<'a> {
    link: &'a LinkProblem,
    opts: &'a SeriesOptions,
    gain: f64,
    offset: f64,
    knee: f64,
    ln_alpha: f64,
    zeta: Vec<f64>,
    decay: f64,
    mix: TailMixture,
    nu: f64,
    /// `λσ²γ`, the unsaturated tail scale per unit `d^ν`.
    lin_scale: f64,
    w_min: f64,
    w_max: f64,
    ln_fw: f64,
    nodes: Vec<(f64, f64)>,
    wint: HashMap<(usize, i64), f64>,
    diag: Diagnostics,
}

impl<'a> Engine<'a> {
    fn new(link: &'a LinkProblem, opts: &'a SeriesOptions) -> Result<Self> {
        let sat = &link.satellite;
        let zeta = sat.zeta()?;
        let mix = link.hop.mixture()?;
        let (w_min, w_max) = (link.orbit.min_distance(), link.orbit.max_distance());
        let nodes = CgqRule::new(opts.cgq_nodes)?.mapped(w_min, w_max).collect();
        Ok(Self {
            link,
            opts,
            gain: link.gain,
            offset: link.offset,
            knee: link.knee(),
            ln_alpha: sat.alpha().ln(),
            zeta,
            decay: sat.beta_bar(),
            nu: link.hop.path_loss(),
            lin_scale: mix.rate * link.noise * link.threshold,
            mix,
            w_min,
            w_max,
            ln_fw: -(link.orbit.centre_distance() * w_min).ln(),
            nodes,
            wint: HashMap::new(),
            diag: Diagnostics::default(),
        })
    }

    /// Sums `term(0), term(1), …` until `quiet_terms` consecutive terms are
    /// negligible.
    fn series(&mut self, name: &'static str, mut term: impl FnMut(&mut Self, usize) -> Result<f64>) -> Result<f64> {
        let (tol, quiet_needed, cap) = (self.opts.rel_tol, self.opts.quiet_terms, self.opts.max_terms);
        let mut sum = 0.0;
        let mut quiet = 0;
        for i in 0..cap {
            let t = term(self, i)?;
            if !t.is_finite() {
                return Err(AnalyticError::NonFinite { what: name });
            }
            sum += t;
            if t.abs() <= tol * sum.abs() {
                quiet += 1;
                if quiet >= quiet_needed {
                    self.diag.series.push(SeriesReport { name, terms: i + 1 });
                    return Ok(sum);
                }
            } else {
                quiet = 0;
            }
        }
        Err(AnalyticError::NoConvergence { series: name, terms: cap, partial: sum })
    }

    fn mixture_terms(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.mix.weights.iter().enumerate().filter(|(_, w)| **w > 0.0).map(|(n, w)| (n, w.ln() - ln_factorial(n)))
    }

    fn satellite_terms(&self) -> impl Iterator<Item = (usize, f64, f64)> + '_ {
        self.zeta.iter().enumerate().filter(|(_, z)| **z != 0.0).map(|(k, z)| (k, z.abs().ln(), z.signum()))
    }

    /// `ln ∫ f_w r^{k+1} e^{−s·o} s^{−a} Γ(a, s·knee) dw` with `r = w²/g`, `s = β̄r`.
    fn ln_upper_w_integral(&mut self, k: usize, a: i64) -> Result<f64> {
        if let Some(v) = self.wint.get(&(k, a)) {
            return Ok(*v);
        }
        let mut acc = LogSum::default();
        for &(w, wt) in &self.nodes {
            let r = w * w / self.gain;
            let s = self.decay * r;
            let ln = wt.ln() + w.ln() + self.ln_fw + (k + 1) as f64 * r.ln() - s * self.offset - a as f64 * s.ln()
                + ln_upper_gamma(a as f64, s * self.knee)?;
            acc.add(ln, 1.0);
        }
        let v = acc.ln_abs();
        self.wint.insert((k, a), v);
        Ok(v)
    }

    /// Unsaturated branch with `e^{−sz}` expanded; the satellite-distance
    /// integral is then exact.
    fn linear_expanded(&mut self) -> Result<f64> {
        let (g, o, bb) = (self.gain, self.offset, self.decay);
        let (u_lo, u_hi) = (bb * o * self.w_min.powi(2) / g, bb * o * self.w_max.powi(2) / g);
        let ln_w_pre = (g / (2.0 * self.link.orbit.centre_distance() * self.w_min)).ln();
        self.series("unsaturated branch, exponential expansion", |e, k2| {
            let mut total = LogSum::default();
            let sats: Vec<_> = e.satellite_terms().collect();
            let mixes: Vec<_> = e.mixture_terms().collect();
            for &(k, ln_z, sz) in &sats {
                let order = (k + k2 + 2) as f64;
                let ln_w = ln_w_pre - order * (bb * o).ln() + ln_delta_gamma(order, u_lo, u_hi)?;
                for k1 in 0..=k {
                    for &(n, ln_wn) in &mixes {
                        let s1 = k1 as f64 + k2 as f64 + 1.0 - n as f64;
                        let d = e.linear_distance_part(n, s1)?;
                        let ln = e.ln_alpha + ln_z + ln_choose(k, k1) + (k - k1) as f64 * o.ln() + ln_wn + k2 as f64 * bb.ln()
                            - ln_factorial(k2)
                            + ln_w
                            + d.ln_abs();
                        total.add(ln, sz * parity(k2) * d.sign());
                    }
                }
            }
            Ok(total.value())
        })
    }

    /// `Σ_pieces c_j/ν · c0^n knee^{s1} [D^{νn+j+1} G(c0 D^ν / knee)]` over the
    /// distance support.
    fn linear_distance_part(&self, n: usize, s1: f64) -> Result<LogSum> {
        let (nu, c0, p) = (self.nu, self.lin_scale, self.knee);
        let mut acc = LogSum::default();
        for piece in self.link.distance.pieces() {
            for mono in &piece.terms {
                let j = mono.power as f64;
                let a = n as f64 + (j + 1.0) / nu;
                let g = MeijerG::new(MeijerInstance::G2123 { s: s1, a })?;
                for (d, sign) in endpoints(piece.lo, piece.hi) {
                    let (ln_g, sg) = g.ln_eval(c0 * d.powf(nu) / p)?;
                    let ln = mono.coeff.abs().ln() - nu.ln() + n as f64 * c0.ln() + s1 * p.ln() + (nu * n as f64 + j + 1.0) * d.ln() + ln_g;
                    acc.add(ln, sign * mono.coeff.signum() * sg);
                }
            }
        }
        Ok(acc)
    }

    /// Unsaturated branch with `z` over `(0, ∞)`: Bessel-K in `z`, a Meijer-G
    /// antiderivative in `d` and quadrature in `w`.
    fn linear_full_range(&mut self) -> Result<f64> {
        let (g, o, nu, c0, bb) = (self.gain, self.offset, self.nu, self.lin_scale, self.decay);
        let sats: Vec<_> = self.satellite_terms().collect();
        let mixes: Vec<_> = self.mixture_terms().collect();
        let m = self.zeta.len();
        let mut total = LogSum::default();
        for &(w, wt) in &self.nodes {
            let r = w * w / g;
            let s = bb * r;
            let base = wt.ln() + w.ln() + self.ln_fw - s * o;
            for k1 in 0..m {
                for &(n, ln_wn) in &mixes {
                    let sp = k1 as f64 - n as f64;
                    let (sg2, sg3) = ((n + k1 + 1) as f64 / 2.0, (sp + 1.0) / 2.0);
                    let mut inner = LogSum::default();
                    for piece in self.link.distance.pieces() {
                        for mono in &piece.terms {
                            let j = mono.power as f64;
                            let a = sg2 + (j + 1.0) / nu;
                            let gm = MeijerG::new(MeijerInstance::G2113 { s: sg3, a })?;
                            for (d, sign) in endpoints(piece.lo, piece.hi) {
                                let (ln_g, sgn) = gm.ln_eval(s * c0 * d.powf(nu))?;
                                let ln = mono.coeff.abs().ln() + std::f64::consts::LN_2 - (sp + 1.0) / 2.0 * s.ln() - (2.0 * nu).ln()
                                    + sg2 * c0.ln()
                                    + (nu * sg2 + j + 1.0) * d.ln()
                                    + ln_g;
                                inner.add(ln, sign * mono.coeff.signum() * sgn);
                            }
                        }
                    }
                    for &(k, ln_z, sz) in sats.iter().filter(|t| t.0 >= k1) {
                        let ln = self.ln_alpha + ln_z + ln_choose(k, k1) + (k - k1) as f64 * o.ln() + ln_wn + base + (k + 1) as f64 * r.ln() + inner.ln_abs();
                        total.add(ln, sz * inner.sign());
                    }
                }
            }
        }
        Ok(total.value())
    }

    /// Part of the full-range unsaturated term beyond the knee, with
    /// `e^{−c_d/z}` expanded.
    fn linear_beyond_knee(&mut self) -> Result<f64> {
        let (o, nu, c0) = (self.offset, self.nu, self.lin_scale);
        self.series("unsaturated branch, beyond-knee correction", |e, k2| {
            let sats: Vec<_> = e.satellite_terms().collect();
            let mixes: Vec<_> = e.mixture_terms().collect();
            let mut total = LogSum::default();
            for &(n, ln_wn) in &mixes {
                // Σ c_j c0^{n+k2} (d_hi^p − d_lo^p)/p with p = ν(n+k2)+j+1.
                let mut dist = LogSum::default();
                for piece in e.link.distance.pieces() {
                    for mono in &piece.terms {
                        let pw = nu * (n + k2) as f64 + mono.power as f64 + 1.0;
                        let ln_hi = pw * piece.hi.ln();
                        let ratio = if piece.lo > 0.0 { (pw * (piece.lo / piece.hi).ln()).exp() } else { 0.0 };
                        let ln = mono.coeff.abs().ln() + (n + k2) as f64 * c0.ln() + ln_hi + (-ratio).ln_1p() - pw.ln();
                        dist.add(ln, mono.coeff.signum());
                    }
                }
                for &(k, ln_z, sz) in &sats {
                    for k1 in 0..=k {
                        let a = k1 as i64 - n as i64 - k2 as i64 + 1;
                        let ln_w = e.ln_upper_w_integral(k, a)?;
                        let ln = e.ln_alpha + ln_z + ln_choose(k, k1) + (k - k1) as f64 * o.ln() + ln_wn - ln_factorial(k2) + dist.ln_abs() + ln_w;
                        total.add(ln, sz * parity(k2) * dist.sign());
                    }
                }
            }
            Ok(total.value())
        })
    }

    /// Saturated branch for a positive knee.
    fn saturated(&mut self) -> Result<f64> {
        let (g, o, nu) = (self.gain, self.offset, self.nu);
        let link = self.link;
        let q0 = self.mix.rate * link.noise * link.threshold * link.eta_s / (link.saturation * g);
        self.series("saturated branch", |e, k2| {
            let sats: Vec<_> = e.satellite_terms().collect();
            let mixes: Vec<_> = e.mixture_terms().collect();
            let mut total = LogSum::default();
            for &(n, ln_wn) in &mixes {
                let mut dist = LogSum::default();
                for piece in link.distance.pieces() {
                    for mono in &piece.terms {
                        let jp = (mono.power as f64 + 1.0) / nu;
                        let ln_dg = ln_delta_gamma((n + k2) as f64 + jp, q0 * piece.lo.powf(nu), q0 * piece.hi.powf(nu))?;
                        dist.add(mono.coeff.abs().ln() - nu.ln() - jp * q0.ln() + ln_dg, mono.coeff.signum());
                    }
                }
                for &(k, ln_z, sz) in &sats {
                    for k1 in 0..=k + n {
                        let a = k1 as i64 - n as i64 - k2 as i64 + 1;
                        let ln_w = e.ln_upper_w_integral(k, a)?;
                        let ln = e.ln_alpha + ln_z + ln_wn + ln_choose(k + n, k1) + (k + n - k1 + k2) as f64 * o.ln() - ln_factorial(k2) + dist.ln_abs() + ln_w;
                        total.add(ln, sz * parity(k2) * dist.sign());
                    }
                }
            }
            Ok(total.value())
        })
    }

    /// Saturated branch when the knee is not positive: every `z > 0` is
    /// saturated and the `z` integral is a Bessel-K.
    fn saturated_whole_range(&mut self) -> Result<f64> {
        let (g, nu) = (self.gain, self.nu);
        let link = self.link;
        let q0 = self.mix.rate * link.noise * link.threshold * link.eta_s / (link.saturation * g);
        let (d_lo, d_hi) = link.distance.support();
        // Pr[Y > t] ≤ tail at the nearest distance bounds the whole branch.
        let bound = self.mix.tail(q0 * d_lo.powf(nu) / self.mix.rate);
        if bound < 1e-15 {
            self.diag.notes.push(format!("saturated branch below {bound:.1e}; taken as zero"));
            return Ok(0.0);
        }
        // The expansion of e^{−q_d} needs small q_d; its Meijer-G count per
        // term also grows quadratically with the mixture length.
        let q_max = q0 * d_hi.powf(nu);
        let monomials: usize = self.link.distance.pieces().iter().map(|p| 2 * p.terms.len()).sum();
        let per_term: usize = (0..self.mix.weights.len()).map(|n| (0..self.zeta.len()).map(|k| k + n + 1).sum::<usize>()).sum();
        if q_max <= 4.0 && self.nodes.len() * per_term * monomials <= WHOLE_RANGE_SERIES_BUDGET {
            self.saturated_whole_range_series(q0)
        } else {
            self.diag.notes.push("saturated branch: distance integral by adaptive quadrature".to_string());
            self.saturated_whole_range_quadrature(q0)
        }
    }

    fn saturated_whole_range_series(&mut self, q0: f64) -> Result<f64> {
        let (g, o, nu, bb) = (self.gain, self.offset, self.nu, self.decay);
        let link = self.link;
        self.series("saturated branch, whole range", |e, k2| {
            let sats: Vec<_> = e.satellite_terms().collect();
            let mixes: Vec<_> = e.mixture_terms().collect();
            let mut total = LogSum::default();
            for &(w, wt) in &e.nodes {
                let r = w * w / g;
                let s = bb * r;
                let base = wt.ln() + w.ln() + e.ln_fw - s * o;
                for &(n, ln_wn) in &mixes {
                    for &(k, ln_z, sz) in &sats {
                        for k1 in 0..=k + n {
                            let sp = k1 as f64 - n as f64;
                            let (sg2, sg3) = ((n + 2 * k2 + k1 + 1) as f64 / 2.0, (sp + 1.0) / 2.0);
                            let mut inner = LogSum::default();
                            for piece in link.distance.pieces() {
                                for mono in &piece.terms {
                                    let j = mono.power as f64;
                                    let gm = MeijerG::new(MeijerInstance::G2113 { s: sg3, a: sg2 + (j + 1.0) / nu })?;
                                    for (d, sign) in endpoints(piece.lo, piece.hi) {
                                        let (ln_g, sgn) = gm.ln_eval(s * o * q0 * d.powf(nu))?;
                                        let ln = mono.coeff.abs().ln() + sg2 * q0.ln() - (2.0 * nu).ln() + (nu * sg2 + j + 1.0) * d.ln() + ln_g;
                                        inner.add(ln, sign * mono.coeff.signum() * sgn);
                                    }
                                }
                            }
                            let ln = e.ln_alpha + ln_z + ln_wn + ln_choose(k + n, k1) + (k + n - k1) as f64 * o.ln() - ln_factorial(k2)
                                + base
                                + (k + 1) as f64 * r.ln()
                                + std::f64::consts::LN_2
                                + (sp + 1.0) / 2.0 * (o / s).ln()
                                + inner.ln_abs();
                            total.add(ln, sz * parity(k2) * inner.sign());
                        }
                    }
                }
            }
            Ok(total.value())
        })
    }

    fn saturated_whole_range_quadrature(&mut self, q0: f64) -> Result<f64> {
        let (g, o, nu, bb) = (self.gain, self.offset, self.nu, self.decay);
        let sats: Vec<_> = self.satellite_terms().collect();
        let mixes: Vec<_> = self.mixture_terms().collect();
        let max_order = self.zeta.len() + self.mix.weights.len();
        let mut failure = None;
        let mut total = 0.0;
        for &(w, wt) in &self.nodes {
            let r = w * w / g;
            let s = bb * r;
            let mut at_d = |d: f64| -> f64 {
                let q = q0 * d.powf(nu);
                let ln_k = match ln_bessel_k_ladder(max_order, 2.0 * (s * q * o).sqrt()) {
                    Ok(v) => v,
                    Err(err) => {
                        failure.get_or_insert(err);
                        return 0.0;
                    }
                };
                let mut acc = LogSum::default();
                for &(n, ln_wn) in &mixes {
                    for &(k, ln_z, sz) in &sats {
                        for k1 in 0..=k + n {
                            // z^{k1−n} e^{−sz − qo/z} integrates to 2 (qo/s)^{v/2} K_v(2√(sqo)), v = k1−n+1.
                            let order = k1 as f64 - n as f64 + 1.0;
                            let ln = ln_z + ln_wn + ln_choose(k + n, k1) + (k + n - k1) as f64 * o.ln() + (k + 1) as f64 * r.ln() - q
                                + n as f64 * q.ln()
                                + std::f64::consts::LN_2
                                + order / 2.0 * (q * o / s).ln()
                                + ln_k[order.abs() as usize];
                            acc.add(ln, sz);
                        }
                    }
                }
                acc.value()
            };
            let mut over_d = 0.0;
            for piece in self.link.distance.pieces() {
                over_d += adaptive_gk(|d| piece.eval(d) * at_d(d), piece.lo, piece.hi, 1e-13, 1e-10, 2000)?.value;
            }
            total += wt * w * self.ln_fw.exp() * (-s * o).exp() * over_d;
        }
        if let Some(err) = failure {
            return Err(err.into());
        }
        Ok(self.ln_alpha.exp() * total)
    }

    fn run(mut self) -> Result<Outage> {
        let bound = self.decay * self.w_max.powi(2) * self.knee / self.gain;
        let (linear, saturated) = if self.knee > 0.0 {
            let linear = if bound <= self.opts.expansion_limit {
                self.diag.notes.push(format!("unsaturated branch by exponential expansion (conditioning {bound:.3})"));
                self.linear_expanded()?
            } else {
                let full = self.linear_full_range()?;
                let beyond = if self.knee.is_finite() { self.linear_beyond_knee()? } else { 0.0 };
                self.diag.notes.push(format!("unsaturated branch as full range minus beyond-knee part (conditioning {bound:.3})"));
                full - beyond
            };
            let saturated = if self.knee.is_finite() { self.saturated()? } else { 0.0 };
            (linear, saturated)
        } else {
            (0.0, self.saturated_whole_range()?)
        };
        let raw = 1.0 - linear - saturated;
        let value = raw.clamp(0.0, 1.0);
        self.diag.clamped_by = (raw - value).abs();
        if self.diag.clamped_by > self.opts.clamp_warning {
            self.diag.notes.push(format!("result {raw:.3e} clamped into [0, 1]"));
        }
        Ok(Outage { value, linear_success: Some(linear), saturated_success: Some(saturated), diagnostics: self.diag })
    }
}

/// Series evaluation. Needs integer shadowing severity and, for the
/// Nakagami hop, integer severity.
pub fn closed_outage(link: &LinkProblem, opts: &SeriesOptions) -> Result<Outage> {
    link.satellite.integer_severity()?;
    if link.always_fails() {
        return Ok(Outage::exact(1.0, "threshold at or above the SNR ceiling"));
    }
    if link.threshold == 0.0 {
        return Ok(Outage::exact(0.0, "zero threshold"));
    }
    if let crate::SecondHop::Nakagami(n) = &link.hop {
        if n.severity.fract() != 0.0 {
            return Err(ModelError::NonIntegerSeverity { name: "m_rd", value: n.severity }.into());
        }
    }
    Engine::new(link, opts)?.run()
}

#[cfg(test)]
mod tests {
    use super::*;
    use specfun::bessel_k;

    #[test]
    fn log_sum_handles_signs_and_scales() {
        let mut acc = LogSum::default();
        assert_eq!(acc.value(), 0.0);
        acc.add(3.0f64.ln(), 1.0);
        acc.add(1000.0f64.ln(), -1.0);
        acc.add(f64::NEG_INFINITY, 1.0);
        assert!((acc.value() + 997.0).abs() < 1e-12);
        assert_eq!(acc.sign(), -1.0);
        let mut big = LogSum::default();
        big.add(800.0, 1.0);
        big.add(800.0, 1.0);
        assert!((big.ln_abs() - 800.0 - std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn bessel_k_ladder_matches_direct_evaluation() {
        for x in [1e-3, 0.4, 3.0, 40.0] {
            let ladder = ln_bessel_k_ladder(30, x).unwrap();
            for (v, ln) in ladder.iter().enumerate() {
                let direct = bessel_k(v as f64, x).unwrap();
                if direct.is_finite() && direct > 0.0 {
                    assert!((ln - direct.ln()).abs() < 1e-11 * ln.abs().max(1.0), "v={v} x={x}");
                }
            }
        }
    }

    #[test]
    fn binomial_logs() {
        assert!((ln_choose(10, 3) - 120f64.ln()).abs() < 1e-12);
        assert_eq!(parity(3), -1.0);
        assert_eq!(endpoints(0.0, 2.0).count(), 1);
    }
}
