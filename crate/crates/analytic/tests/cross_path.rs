//! Series against nested quadrature, exact branches and limits.

use proptest::prelude::*;
use sagin_analytic::{avg_throughput, outage, AnalyticError, Method, Outage};
use sagin_model::{db_to_linear, dbm_to_watts, ConeGeometry, IcMode, ModelError, Network, Scenario, ShadowedRician};

const NETWORKS: [Network; 3] = [Network::S2g, Network::A2a(IcMode::Imperfect), Network::A2a(IcMode::Perfect)];

fn at(eta_db: f64) -> Scenario {
    Scenario { eta_s: db_to_linear(eta_db), ..Scenario::default() }
}

fn both(s: &Scenario, n: Network) -> (Outage, Outage) {
    (outage(s, n, Method::Closed).unwrap(), outage(s, n, Method::Integral).unwrap())
}

#[test]
fn series_matches_quadrature_across_the_snr_range() {
    for eta in [95.0, 105.0, 115.0, 125.0, 140.0] {
        for n in NETWORKS {
            let (c, i) = both(&at(eta), n);
            assert!((c.value - i.value).abs() < 1e-4, "{eta} dB {n:?}: {} vs {}", c.value, i.value);
            assert!(c.diagnostics.clamped_by < 1e-6);
        }
    }
}

#[test]
fn series_matches_quadrature_for_deep_cone_and_light_shadowing() {
    let mut s = at(120.0);
    s.cone = ConeGeometry::new(800.0, 250.0, 490.0, 500.0, std::f64::consts::PI / 12.0).unwrap();
    for n in NETWORKS {
        let (c, i) = both(&s, n);
        assert!((c.value - i.value).abs() < 1e-4, "deep cone {n:?}: {} vs {}", c.value, i.value);
    }
    let mut s = at(125.0);
    s.satellite = ShadowedRician::new(5.0, 0.251, 0.279).unwrap();
    for n in NETWORKS {
        let (c, i) = both(&s, n);
        assert!((c.value - i.value).abs() < 1e-4, "light {n:?}: {} vs {}", c.value, i.value);
    }
}

#[test]
fn harvester_saturated_for_every_positive_margin() {
    // Saturation far below the forwarded noise floor: every success is saturated.
    let mut s = at(120.0);
    s.swipt.saturation_w = dbm_to_watts(-60.0);
    s.noise.gu = dbm_to_watts(-120.0);
    s.noise.arx = dbm_to_watts(-120.0);
    for n in NETWORKS {
        let (c, i) = both(&s, n);
        assert_eq!(c.linear_success, Some(0.0));
        assert!((c.value - i.value).abs() < 1e-4, "{n:?}: {} vs {}", c.value, i.value);
        assert!(c.value < 0.5);
    }
    // Same saturation at the default noise: success is negligible.
    s.noise.gu = dbm_to_watts(-50.0);
    assert!(outage(&s, Network::S2g, Method::Closed).unwrap().value > 1.0 - 1e-15);
}

#[test]
fn degenerate_thresholds_are_exact() {
    let mut s = at(130.0);
    s.swipt.sharing = 0.5;
    s.gamma_s = 1.5;
    for m in [Method::Closed, Method::Integral] {
        assert_eq!(outage(&s, Network::S2g, m).unwrap().value, 1.0);
    }
    s.gamma_s = 0.0;
    s.gamma_a = 0.0;
    for m in [Method::Closed, Method::Integral] {
        for n in NETWORKS {
            assert_eq!(outage(&s, n, m).unwrap().value, 0.0);
        }
    }
    let mut s = at(130.0);
    s.swipt.sharing = 1.0;
    for m in [Method::Closed, Method::Integral] {
        assert_eq!(outage(&s, Network::A2a(IcMode::Imperfect), m).unwrap().value, 1.0);
        assert_eq!(outage(&s, Network::A2a(IcMode::Perfect), m).unwrap().value, 1.0);
    }
}

#[test]
fn linear_harvester_is_the_large_saturation_limit() {
    let mut s = at(125.0);
    let typical = s.eta_s * s.satellite.mean() / s.orbit.min_distance().powi(2);
    s.swipt.saturation_w = 1e12 * typical;
    let huge = outage(&s, Network::S2g, Method::Closed).unwrap();
    assert!(huge.saturated_success.unwrap() < 1e-9);
    s.swipt.saturation_w = f64::INFINITY;
    let linear = outage(&s, Network::S2g, Method::Closed).unwrap();
    assert!((huge.value - linear.value).abs() < 1e-4, "{} vs {}", huge.value, linear.value);
    assert_eq!(linear.saturated_success, Some(0.0));
    let reference = outage(&s, Network::S2g, Method::Integral).unwrap();
    assert!((linear.value - reference.value).abs() < 1e-4);
}

#[test]
fn perfect_cancellation_helps_and_outage_falls_with_snr() {
    let mut last = (1.0, 1.0);
    for i in 0..20 {
        let s = at(110.0 + 2.0 * i as f64);
        let im = outage(&s, Network::A2a(IcMode::Imperfect), Method::Closed).unwrap().value;
        let p = outage(&s, Network::A2a(IcMode::Perfect), Method::Closed).unwrap().value;
        assert!(p <= im, "grid point {i}: p-IC {p} > im-IC {im}");
        assert!(im <= last.0 + 1e-9 && p <= last.1 + 1e-9, "not monotone at {i}");
        last = (im, p);
    }
}

#[test]
fn closed_form_needs_integer_severities() {
    let mut s = at(120.0);
    s.satellite = ShadowedRician::new(2.5, 0.063, 0.0005).unwrap();
    let err = outage(&s, Network::S2g, Method::Closed).unwrap_err();
    assert_eq!(err, AnalyticError::Model(ModelError::NonIntegerSeverity { name: "m_sr", value: 2.5 }));
    let v = outage(&s, Network::S2g, Method::Integral).unwrap().value;
    // Severity between the two integer neighbours gives an outage between theirs.
    let mut lo = s.clone();
    lo.satellite = ShadowedRician::new(2.0, 0.063, 0.0005).unwrap();
    let mut hi = s.clone();
    hi.satellite = ShadowedRician::new(3.0, 0.063, 0.0005).unwrap();
    let (a, b) = (outage(&lo, Network::S2g, Method::Integral).unwrap().value, outage(&hi, Network::S2g, Method::Integral).unwrap().value);
    assert!(v >= a.min(b) - 1e-6 && v <= a.max(b) + 1e-6, "{a} {v} {b}");

    let mut s = at(120.0);
    s.gu.severity = 1.5;
    assert!(matches!(outage(&s, Network::S2g, Method::Closed), Err(AnalyticError::Model(ModelError::NonIntegerSeverity { name: "m_rd", .. }))));
    assert!(outage(&s, Network::S2g, Method::Integral).is_ok());
}

#[test]
fn throughput_identities() {
    let s = at(130.0);
    let t = avg_throughput(&s, 0.1, 0.1, IcMode::Imperfect, Method::Closed).unwrap();
    let expect = 0.6 / 2.0 * (0.1 * (1.0 - t.outage_s2g) + 0.1 * (1.0 - t.outage_a2a));
    assert!((t.value - expect).abs() < 1e-15);
    // Both thresholds above their ceilings.
    assert_eq!(avg_throughput(&s, 1.0, 1.0, IcMode::Imperfect, Method::Closed).unwrap().value, 0.0);
    let mut solo = s.clone();
    solo.swipt.sharing = 1.0;
    let t = avg_throughput(&solo, 0.1, 0.1, IcMode::Imperfect, Method::Closed).unwrap();
    assert_eq!(t.outage_a2a, 1.0);
    assert!((t.value - 0.3 * 0.1 * (1.0 - t.outage_s2g)).abs() < 1e-15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]
    #[test]
    fn series_and_quadrature_agree_off_the_defaults(
        mu in 0.55f64..0.95, rho in 0.1f64..0.6, eta in 112.0f64..150.0, p_th in 0.0f64..20.0,
    ) {
        let mut s = at(eta);
        s.swipt.sharing = mu;
        s.swipt.time_split = rho;
        s.swipt.saturation_w = dbm_to_watts(p_th);
        let s = s.with_rates(0.1, 0.05).unwrap();
        for n in NETWORKS {
            let (c, i) = both(&s, n);
            prop_assert!((0.0..=1.0).contains(&c.value));
            prop_assert!((c.value - i.value).abs() < 2e-4, "{:?}: {} vs {}", n, c.value, i.value);
        }
    }
}
