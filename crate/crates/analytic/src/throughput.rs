//! Average throughput over the two destinations.

use crate::{outage, Method, Result};
use sagin_model::{gamma_from_rate, IcMode, Network, Scenario, SwiptParams};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Throughput {
    pub value: f64,
    pub outage_s2g: f64,
    pub outage_a2a: f64,
}

/// `(1−ρ)T/2 · [r_s (1 − OP_S) + r_a (1 − OP_A)]`, with the thresholds set
/// from the two target rates.
pub fn avg_throughput(scenario: &Scenario, rate_s: f64, rate_a: f64, mode: IcMode, method: Method) -> Result<Throughput> {
    let rho = scenario.swipt.time_split;
    let sc = Scenario { gamma_s: gamma_from_rate(rate_s, rho)?, gamma_a: gamma_from_rate(rate_a, rho)?, ..scenario.clone() };
    let outage_s2g = outage(&sc, Network::S2g, method)?.value;
    let outage_a2a = outage(&sc, Network::A2a(mode), method)?.value;
    let value = throughput_from_outages(&sc.swipt, rate_s, rate_a, outage_s2g, outage_a2a);
    Ok(Throughput { value, outage_s2g, outage_a2a })
}

/// `(1−ρ)T/2 · [r_s (1 − OP_S) + r_a (1 − OP_A)]`.
pub fn throughput_from_outages(swipt: &SwiptParams, rate_s: f64, rate_a: f64, outage_s2g: f64, outage_a2a: f64) -> f64 {
    (1.0 - swipt.time_split) * swipt.block_s / 2.0 * (rate_s * (1.0 - outage_s2g) + rate_a * (1.0 - outage_a2a))
}
