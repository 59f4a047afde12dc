//! Checks the library against a table of high-precision reference values.
//!
//! Row format (tab separated): `kind  p1,p2,...  argument  value`; `#` starts a comment.

use crate::{bessel, delta_gamma, meijer_g, upper_gamma, whittaker_w, MeijerInstance, SpecfunError};

pub const MEIJER_TOLERANCE: f64 = 1e-8;
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleRow {
    pub kind: String,
    pub params: Vec<f64>,
    pub arg: f64,
    pub expected: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleOutcome {
    pub row: OracleRow,
    pub computed: Result<f64, SpecfunError>,
    pub rel_error: f64,
    pub tolerance: f64,
}

impl OracleOutcome {
    pub fn passed(&self) -> bool {
        self.rel_error <= self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("line {line}: {reason}")]
pub struct ParseError {
    pub line: usize,
    pub reason: String,
}

pub fn parse(text: &str) -> Result<Vec<OracleRow>, ParseError> {
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |reason: &str| ParseError { line: i + 1, reason: reason.to_string() };
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 4 {
            return Err(bad("expected 4 tab-separated columns"));
        }
        let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad(&format!("bad number {s:?}")));
        let params = if cols[1].is_empty() {
            Vec::new()
        } else {
            cols[1].split(',').map(num).collect::<Result<_, _>>()?
        };
        rows.push(OracleRow { kind: cols[0].to_string(), params, arg: num(cols[2])?, expected: num(cols[3])? });
    }
    Ok(rows)
}

fn evaluate(row: &OracleRow) -> Result<f64, SpecfunError> {
    let p = &row.params;
    let x = row.arg;
    let need = |n: usize| {
        if p.len() == n {
            Ok(())
        } else {
            Err(crate::domain("oracle", format!("{} expects {n} parameters", row.kind)))
        }
    };
    match row.kind.as_str() {
        "delta_gamma" => need(2).and_then(|_| delta_gamma(p[0], p[1], x)),
        "upper_gamma" => need(1).and_then(|_| upper_gamma(p[0], x)),
        "bessel_j1" => Ok(bessel::bessel_j1(x)),
        "bessel_j3" => Ok(bessel::bessel_j3(x)),
        "beam_pattern" => Ok(bessel::bessel_j1(x) / (2.0 * x) + 36.0 * bessel::bessel_j3(x) / x.powi(3)),
        "bessel_i0" => bessel::bessel_i0(x),
        "bessel_k" => need(1).and_then(|_| bessel::bessel_k(p[0], x)),
        "whittaker_w" => need(2).and_then(|_| whittaker_w(p[0], p[1], x)),
        "meijer_g0110" => meijer_g(MeijerInstance::Exp, x),
        "meijer_g2002" => need(1).and_then(|_| meijer_g(MeijerInstance::Bessel { v: p[0] }, x)),
        "meijer_g2123" => need(2).and_then(|_| meijer_g(MeijerInstance::G2123 { s: p[0], a: p[1] }, x)),
        "meijer_g2113" => need(2).and_then(|_| meijer_g(MeijerInstance::G2113 { s: p[0], a: p[1] }, x)),
        other => Err(crate::domain("oracle", format!("unknown kind {other}"))),
    }
}

pub fn check(rows: &[OracleRow]) -> Vec<OracleOutcome> {
    rows.iter()
        .map(|row| {
            let tolerance = if row.kind.starts_with("meijer") { MEIJER_TOLERANCE } else { DEFAULT_TOLERANCE };
            let computed = evaluate(row);
            let rel_error = match &computed {
                Ok(v) if row.expected == 0.0 => v.abs(),
                Ok(v) => ((v - row.expected) / row.expected).abs(),
                Err(_) => f64::INFINITY,
            };
            let rel_error = if rel_error.is_nan() { f64::INFINITY } else { rel_error };
            OracleOutcome { row: row.clone(), computed, rel_error, tolerance }
        })
        .collect()
}
