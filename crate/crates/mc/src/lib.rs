//! Monte Carlo estimates of outage probability and throughput.
//!
//! Trial `i` draws from ChaCha8 stream `i` of the run seed, so an estimate
//! depends only on `(scenario, trials, seed)` and not on how trials are
//! spread over worker threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sagin_model::{gamma_from_rate, IcMode, Network, Result, Scenario, Snrs};

/// Where an outage value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EstimateMethod {
    MonteCarlo,
    Closed,
    Integral,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutageEstimate {
    pub value: f64,
    pub std_error: f64,
    pub trials: u64,
    pub method: EstimateMethod,
    pub seed: u64,
}

impl OutageEstimate {
    fn from_count(failures: u64, trials: u64, seed: u64) -> Self {
        let value = failures as f64 / trials as f64;
        let std_error = (value * (1.0 - value) / trials as f64).sqrt();
        Self { value, std_error, trials, method: EstimateMethod::MonteCarlo, seed }
    }

    /// The estimate is within ten events of zero and says little beyond an
    /// upper bound.
    pub fn at_resolution_floor(&self) -> bool {
        self.method == EstimateMethod::MonteCarlo && self.value < 10.0 / self.trials as f64
    }
}

/// Outage estimates for all three destinations from the same draws.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointEstimate {
    pub s2g: OutageEstimate,
    pub a2a_imperfect: OutageEstimate,
    pub a2a_perfect: OutageEstimate,
}

impl JointEstimate {
    pub fn get(&self, network: Network) -> OutageEstimate {
        match network {
            Network::S2g => self.s2g,
            Network::A2a(IcMode::Imperfect) => self.a2a_imperfect,
            Network::A2a(IcMode::Perfect) => self.a2a_perfect,
        }
    }
}

/// Per-trial outcome counts; addition is exact so the reduction order does
/// not matter.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Counts {
    s2g: u64,
    imperfect: u64,
    perfect: u64,
    /// Trials where the S2G link and the imperfect-cancellation aerial link both fail.
    s2g_and_imperfect: u64,
    s2g_and_perfect: u64,
    /// Imperfect fails while perfect succeeds.
    imperfect_only: u64,
}

impl std::ops::Add for Counts {
    type Output = Counts;
    fn add(self, o: Counts) -> Counts {
        Counts {
            s2g: self.s2g + o.s2g,
            imperfect: self.imperfect + o.imperfect,
            perfect: self.perfect + o.perfect,
            s2g_and_imperfect: self.s2g_and_imperfect + o.s2g_and_imperfect,
            s2g_and_perfect: self.s2g_and_perfect + o.s2g_and_perfect,
            imperfect_only: self.imperfect_only + o.imperfect_only,
        }
    }
}

fn classify(snr: &Snrs, gamma_s: f64, gamma_a: f64) -> Counts {
    let s = (snr.gu < gamma_s) as u64;
    let i = (snr.arx_imperfect < gamma_a) as u64;
    let p = (snr.arx_perfect < gamma_a) as u64;
    Counts { s2g: s, imperfect: i, perfect: p, s2g_and_imperfect: s & i, s2g_and_perfect: s & p, imperfect_only: i & (1 - p) }
}

fn run(scenario: &Scenario, trials: u64, seed: u64) -> Counts {
    let base = ChaCha8Rng::seed_from_u64(seed);
    let relay = scenario.relay();
    let (gs, ga) = (scenario.gamma_s, scenario.gamma_a);
    (0..trials)
        .into_par_iter()
        .fold(Counts::default, |acc, i| {
            let mut rng = base.clone();
            rng.set_stream(i);
            let draw = scenario.draw(&mut rng);
            acc + classify(&relay.snrs(&draw), gs, ga)
        })
        .reduce(Counts::default, |a, b| a + b)
}

/// All three outage probabilities from one set of `trials` draws.
pub fn simulate_joint(scenario: &Scenario, trials: u64, seed: u64) -> Result<JointEstimate> {
    scenario.validate()?;
    let trials = trials.max(1);
    let c = run(scenario, trials, seed);
    Ok(JointEstimate {
        s2g: OutageEstimate::from_count(c.s2g, trials, seed),
        a2a_imperfect: OutageEstimate::from_count(c.imperfect, trials, seed),
        a2a_perfect: OutageEstimate::from_count(c.perfect, trials, seed),
    })
}

pub fn simulate_op(scenario: &Scenario, network: Network, trials: u64, seed: u64) -> Result<OutageEstimate> {
    Ok(simulate_joint(scenario, trials, seed)?.get(network))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThroughputEstimate {
    pub value: f64,
    pub std_error: f64,
    pub outage_s2g: OutageEstimate,
    pub outage_a2a: OutageEstimate,
}

/// Throughput with the thresholds set from the target rates.
pub fn simulate_throughput(
    scenario: &Scenario,
    rate_s: f64,
    rate_a: f64,
    mode: IcMode,
    trials: u64,
    seed: u64,
) -> Result<ThroughputEstimate> {
    let rho = scenario.swipt.time_split;
    let sc = Scenario { gamma_s: gamma_from_rate(rate_s, rho)?, gamma_a: gamma_from_rate(rate_a, rho)?, ..scenario.clone() };
    throughput_at_thresholds(&sc, rate_s, rate_a, mode, trials, seed)
}

/// Throughput credited at the given rates while success is judged against
/// the thresholds already in `scenario`. The standard error accounts for
/// the correlation of the two outage events.
pub fn throughput_at_thresholds(
    scenario: &Scenario,
    rate_s: f64,
    rate_a: f64,
    mode: IcMode,
    trials: u64,
    seed: u64,
) -> Result<ThroughputEstimate> {
    scenario.validate()?;
    let trials = trials.max(1);
    let c = run(scenario, trials, seed);
    let (a2a, both) = match mode {
        IcMode::Imperfect => (c.imperfect, c.s2g_and_imperfect),
        IcMode::Perfect => (c.perfect, c.s2g_and_perfect),
    };
    let n = trials as f64;
    let (ps, pa, pboth) = (c.s2g as f64 / n, a2a as f64 / n, both as f64 / n);
    let scale = (1.0 - scenario.swipt.time_split) * scenario.swipt.block_s / 2.0;
    let value = scale * (rate_s * (1.0 - ps) + rate_a * (1.0 - pa));
    // Var[r_s·1_S + r_a·1_A] over the per-trial success indicators.
    let var = rate_s * rate_s * ps * (1.0 - ps) + rate_a * rate_a * pa * (1.0 - pa) + 2.0 * rate_s * rate_a * (pboth - ps * pa);
    Ok(ThroughputEstimate {
        value,
        std_error: scale * (var.max(0.0) / n).sqrt(),
        outage_s2g: OutageEstimate::from_count(c.s2g, trials, seed),
        outage_a2a: OutageEstimate::from_count(a2a, trials, seed),
    })
}

/// Both cancellation modes on identical draws.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairedComparison {
    pub imperfect: OutageEstimate,
    pub perfect: OutageEstimate,
    /// `OP_imperfect − OP_perfect`.
    pub difference: f64,
    pub difference_se: f64,
}

pub fn common_random_numbers_compare(scenario: &Scenario, trials: u64, seed: u64) -> Result<PairedComparison> {
    scenario.validate()?;
    let trials = trials.max(1);
    let c = run(scenario, trials, seed);
    let n = trials as f64;
    // Perfect cancellation never fails where imperfect succeeds, so the
    // per-trial difference is the indicator of `imperfect_only`.
    let d = c.imperfect_only as f64 / n;
    Ok(PairedComparison {
        imperfect: OutageEstimate::from_count(c.imperfect, trials, seed),
        perfect: OutageEstimate::from_count(c.perfect, trials, seed),
        difference: (c.imperfect as f64 - c.perfect as f64) / n,
        difference_se: (d * (1.0 - d) / n).sqrt(),
    })
}
