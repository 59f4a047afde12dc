//! Bessel functions: `J_n` (Miller recurrence), `I_0` (power series) and
//! `K_ν` for real order (trapezoid rule on `∫ e^{−x cosh t} cosh(νt) dt`).

use crate::{domain, Result, SpecfunError};

/// `J_n(x)` for integer `n ≥ 0` and real `x`.
pub fn bessel_jn(n: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    if x < 0.0 {
        let v = bessel_jn(n, -x);
        return if n % 2 == 1 { -v } else { v };
    }
    let nf = n as f64;
    let top = nf.max(x);
    let mut start = (top + 40.0 + 8.0 * top.sqrt()) as usize;
    start += start % 2;
    // Backward recurrence J_{k−1} = (2k/x) J_k − J_{k+1}, normalized by J_0 + 2ΣJ_{2k} = 1.
    let (mut jp, mut j) = (0.0f64, 1e-30f64);
    let mut norm = 0.0;
    let mut wanted = 0.0;
    for k in (1..=start).rev() {
        let jm = 2.0 * k as f64 / x * j - jp;
        jp = j;
        j = jm;
        if j.abs() > 1e250 {
            j *= 1e-250;
            jp *= 1e-250;
            norm *= 1e-250;
            wanted *= 1e-250;
        }
        let idx = k - 1;
        if idx % 2 == 0 && idx > 0 {
            norm += 2.0 * j;
        }
        if idx == n as usize {
            wanted = j;
        }
    }
    norm += j;
    wanted / norm
}

pub fn bessel_j1(x: f64) -> f64 {
    bessel_jn(1, x)
}

pub fn bessel_j3(x: f64) -> f64 {
    bessel_jn(3, x)
}

const I0_MAX_TERMS: usize = 500;

/// `e^{−x} I_0(x)` for `x ≥ 0`; power series up to `x = 500`, asymptotic beyond.
pub fn bessel_i0_scaled(x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(domain("bessel_i0", format!("x={x}")));
    }
    if x > 500.0 {
        Ok(i0_scaled_asymptotic(x))
    } else {
        i0_scaled_series(x)
    }
}

fn i0_scaled_series(x: f64) -> Result<f64> {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..I0_MAX_TERMS {
        term *= q / (k * k) as f64;
        sum += term;
        if term < 1e-16 * sum {
            return Ok(sum * (-x).exp());
        }
    }
    Err(SpecfunError::NoConvergence { function: "bessel_i0", iterations: I0_MAX_TERMS })
}

/// `e^{−x} I0(x) ~ (2πx)^{−1/2} Σ ((2k−1)!!)² / (k! (8x)^k)`
fn i0_scaled_asymptotic(x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..30 {
        let kf = k as f64;
        term *= (2.0 * kf - 1.0).powi(2) / (kf * 8.0 * x);
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    sum / (2.0 * std::f64::consts::PI * x).sqrt()
}

/// `I_0(x)` for `x ≥ 0`.
pub fn bessel_i0(x: f64) -> Result<f64> {
    bessel_i0_scaled(x).map(|v| v * x.exp())
}

/// `ln K_ν(x)` for real `ν` and `x > 0`.
pub fn ln_bessel_k(nu: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) || !nu.is_finite() || !x.is_finite() {
        return Err(domain("bessel_k", format!("nu={nu}, x={x} (K diverges at 0)")));
    }
    let nu = nu.abs();
    let log_f = |t: f64| -x * t.cosh() + nu * t + (-2.0 * nu * t).exp().ln_1p() - std::f64::consts::LN_2;
    // Peak of −x cosh t + νt sits at t* = asinh(ν/x).
    let peak = log_f((nu / x).asinh());
    let h = 0.05;
    let mut sum = 0.5 * (log_f(0.0) - peak).exp();
    let mut k = 1;
    loop {
        let t = k as f64 * h;
        let v = (log_f(t) - peak).exp();
        sum += v;
        if t > (nu / x).asinh() && v < 1e-18 * sum {
            break;
        }
        k += 1;
        if k > 200_000 {
            return Err(SpecfunError::NoConvergence { function: "bessel_k", iterations: k });
        }
    }
    Ok(peak + (h * sum).ln())
}

/// `K_ν(x)` for real `ν` and `x > 0`.
pub fn bessel_k(nu: f64, x: f64) -> Result<f64> {
    ln_bessel_k(nu, x).map(f64::exp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn i0_at_zero_is_one() {
        assert_eq!(bessel_i0(0.0).unwrap(), 1.0);
    }

    #[test]
    fn i0_series_and_asymptotic_agree_at_switch() {
        let series = i0_scaled_series(500.0).unwrap();
        assert!(rel(series, i0_scaled_asymptotic(500.0)) < 1e-12);
    }

    #[test]
    fn k_half_integer_closed_form() {
        let v = bessel_k(0.5, 1.0).unwrap();
        assert!(rel(v, (PI / 2.0).sqrt() * (-1.0f64).exp()) < 1e-14);
        assert!((v - 0.46107).abs() < 1e-5);
        // K_{3/2}(x) = sqrt(π/(2x)) e^{−x} (1 + 1/x)
        let x = 3.7;
        let expect = (PI / (2.0 * x)).sqrt() * (-x).exp() * (1.0 + 1.0 / x);
        assert!(rel(bessel_k(1.5, x).unwrap(), expect) < 1e-14);
        assert!(bessel_k(1.0, 0.0).is_err());
    }

    #[test]
    fn j_small_argument_limits() {
        let x = 1e-4;
        assert!(rel(bessel_j1(x) / (2.0 * x), 0.25) < 1e-8);
        assert!(rel(36.0 * bessel_j3(x) / x.powi(3), 0.75) < 1e-8);
    }

    #[test]
    fn j_wronskian_like_identity() {
        // J_{n−1} + J_{n+1} = (2n/x) J_n
        for &x in &[0.7, 5.5227, 23.0] {
            let lhs = bessel_jn(0, x) + bessel_jn(2, x);
            assert!((lhs - 2.0 / x * bessel_j1(x)).abs() < 1e-14);
        }
    }
}
