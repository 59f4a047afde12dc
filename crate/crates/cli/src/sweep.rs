//! Grid evaluation and CSV output.

use crate::config::ScenarioConfig;
use rayon::prelude::*;
use sagin_analytic::{outage, throughput_from_outages, Method};
use sagin_mc::{throughput_at_thresholds, EstimateMethod};
use sagin_model::Network;
use std::io::Write;

/// Clamping beyond this is reported in the diagnostics column.
const CLAMP_REPORT: f64 = 1e-6;

/// Outage at both destinations and the resulting throughput for one method.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Values {
    pub s2g: Option<f64>,
    pub a2a: Option<f64>,
    pub throughput: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub x: f64,
    pub closed: Values,
    pub integral: Values,
    pub mc: Values,
    /// Standard errors of the Monte Carlo values.
    pub mc_se: Values,
    pub diagnostics: Vec<String>,
    /// Every requested method failed at this point.
    pub all_failed: bool,
}

impl Row {
    pub fn get(&self, method: EstimateMethod) -> &Values {
        match method {
            EstimateMethod::Closed => &self.closed,
            EstimateMethod::Integral => &self.integral,
            EstimateMethod::MonteCarlo => &self.mc,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub key: &'static str,
    pub rows: Vec<Row>,
}

impl SweepResult {
    pub fn numeric_failure(&self) -> bool {
        self.rows.iter().any(|r| r.all_failed)
    }

    pub fn header(&self) -> Vec<&str> {
        let mut h = vec![self.key];
        h.extend(COLUMNS);
        h
    }

    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        w.write_record(self.header())?;
        for r in &self.rows {
            let cell = |v: Option<f64>| v.map(format_float).unwrap_or_default();
            let mut record = vec![format_float(r.x)];
            let parts: [fn(&Values) -> Option<f64>; 3] = [|v| v.s2g, |v| v.a2a, |v| v.throughput];
            for part in parts {
                for values in [&r.closed, &r.integral, &r.mc, &r.mc_se] {
                    record.push(cell(part(values)));
                }
            }
            record.push(r.diagnostics.join("; "));
            w.write_record(&record)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Columns after the sweep variable. Fixed whatever methods were requested;
/// cells of unrequested methods stay empty.
pub const COLUMNS: [&str; 13] = [
    "op_s2g_closed",
    "op_s2g_integral",
    "op_s2g_mc",
    "op_s2g_mc_se",
    "op_a2a_closed",
    "op_a2a_integral",
    "op_a2a_mc",
    "op_a2a_mc_se",
    "throughput_closed",
    "throughput_integral",
    "throughput_mc",
    "throughput_mc_se",
    "diagnostics",
];

/// Ten significant digits in the shorter of fixed and exponent notation,
/// trailing zeros removed.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.9e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..10).contains(&exp) {
        let fixed = format!("{:.*}", (9 - exp).max(0) as usize, x);
        trim_zeros(&fixed).to_string()
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Evaluates every requested method at every grid point. Points run on the
/// rayon pool; rows come back in grid order.
pub fn run_sweep(cfg: &ScenarioConfig) -> SweepResult {
    let rows = cfg.sweep.grid.par_iter().map(|&x| evaluate(cfg, x)).collect();
    SweepResult { key: cfg.sweep.key, rows }
}

fn evaluate(cfg: &ScenarioConfig, x: f64) -> Row {
    let mut row = Row {
        x,
        closed: Values::default(),
        integral: Values::default(),
        mc: Values::default(),
        mc_se: Values::default(),
        diagnostics: Vec::new(),
        all_failed: false,
    };
    let point = match cfg.point(x) {
        Ok(p) => p,
        Err(e) => {
            row.diagnostics.push(format!("config: {e}"));
            row.all_failed = true;
            return row;
        }
    };
    let sc = &point.scenario;
    let a2a = Network::A2a(cfg.ic_mode);
    let mut failures = 0;
    for &method in &cfg.methods {
        match method {
            EstimateMethod::Closed | EstimateMethod::Integral => {
                let (label, m) = match method {
                    EstimateMethod::Closed => ("closed", Method::Closed),
                    _ => ("integral", Method::Integral),
                };
                let mut v = Values::default();
                let mut failed = false;
                for (network, slot, name) in [(Network::S2g, &mut v.s2g, "s2g"), (a2a, &mut v.a2a, "a2a")] {
                    match outage(sc, network, m) {
                        Ok(o) => {
                            if o.diagnostics.clamped_by > CLAMP_REPORT {
                                row.diagnostics.push(format!("{label} {name}: clamped by {:.1e}", o.diagnostics.clamped_by));
                            }
                            *slot = Some(o.value);
                        }
                        Err(e) => {
                            row.diagnostics.push(format!("{label} {name}: {e}"));
                            failed = true;
                        }
                    }
                }
                if let (Some(s), Some(a)) = (v.s2g, v.a2a) {
                    v.throughput = Some(throughput_from_outages(&sc.swipt, point.rate_s, point.rate_a, s, a));
                }
                failures += failed as usize;
                if method == EstimateMethod::Closed {
                    row.closed = v;
                } else {
                    row.integral = v;
                }
            }
            EstimateMethod::MonteCarlo => {
                match throughput_at_thresholds(sc, point.rate_s, point.rate_a, cfg.ic_mode, cfg.trials, cfg.seed) {
                    Ok(t) => {
                        row.mc = Values { s2g: Some(t.outage_s2g.value), a2a: Some(t.outage_a2a.value), throughput: Some(t.value) };
                        row.mc_se = Values {
                            s2g: Some(t.outage_s2g.std_error),
                            a2a: Some(t.outage_a2a.std_error),
                            throughput: Some(t.std_error),
                        };
                        for (est, name) in [(t.outage_s2g, "s2g"), (t.outage_a2a, "a2a")] {
                            if est.at_resolution_floor() {
                                row.diagnostics.push(format!("mc {name}: fewer than 10 outage events"));
                            }
                        }
                    }
                    Err(e) => {
                        row.diagnostics.push(format!("mc: {e}"));
                        failures += 1;
                    }
                }
            }
        }
    }
    row.all_failed = failures == cfg.methods.len();
    row
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ten_significant_digits() {
        assert_eq!(format_float(0.1), "0.1");
        assert_eq!(format_float(120.0), "120");
        assert_eq!(format_float(1.0 / 3.0), "0.3333333333");
        assert_eq!(format_float(2.0 / 3.0 * 1e-7), "6.666666667e-8");
        assert_eq!(format_float(9.99999999999), "10");
        assert_eq!(format_float(123456789012.0), "1.23456789e11");
        assert_eq!(format_float(-0.000123456789012), "-0.000123456789");
        assert_eq!(format_float(0.0), "0");
    }

    #[test]
    fn failure_only_when_every_method_fails_somewhere() {
        let row = |all_failed| Row {
            x: 1.0,
            closed: Values::default(),
            integral: Values::default(),
            mc: Values::default(),
            mc_se: Values::default(),
            diagnostics: vec!["closed s2g: no convergence".into()],
            all_failed,
        };
        let mut r = SweepResult { key: "swipt.mu", rows: vec![row(false), row(false)] };
        assert!(!r.numeric_failure());
        r.rows[1].all_failed = true;
        assert!(r.numeric_failure());
        let mut out = Vec::new();
        r.write_csv(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().nth(1).unwrap(), "1,,,,,,,,,,,,,closed s2g: no convergence");
    }
}
