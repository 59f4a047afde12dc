use sagin_analytic::{avg_throughput, outage, Method};
use sagin_mc::{common_random_numbers_compare, simulate_joint, simulate_op, simulate_throughput};
use sagin_model::{db_to_linear, ConeGeometry, IcMode, Network, Scenario};

fn at(eta_db: f64) -> Scenario {
    Scenario { eta_s: db_to_linear(eta_db), ..Scenario::default() }
}

#[test]
fn trivial_thresholds() {
    let mut s = at(120.0);
    s.gamma_s = 0.0;
    s.gamma_a = 0.0;
    let e = simulate_joint(&s, 20_000, 3).unwrap();
    for est in [e.s2g, e.a2a_imperfect, e.a2a_perfect] {
        assert_eq!((est.value, est.std_error), (0.0, 0.0));
    }
    let mut s = at(120.0);
    s.swipt.sharing = 0.5;
    s.gamma_s = 1.0;
    let e = simulate_op(&s, Network::S2g, 20_000, 3).unwrap();
    assert_eq!((e.value, e.std_error), (1.0, 0.0));
}

#[test]
fn estimate_is_independent_of_worker_count() {
    let s = at(115.0);
    let run = |threads| {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(|| simulate_joint(&s, 50_000, 99).unwrap())
    };
    let one = run(1);
    assert_eq!(one, run(3));
    assert_eq!(one, run(8));
    assert_ne!(one, simulate_joint(&s, 50_000, 100).unwrap());
}

#[test]
fn agrees_with_quadrature_within_three_standard_errors() {
    let mut deep = at(118.0);
    deep.cone = ConeGeometry::new(800.0, 250.0, 490.0, 500.0, std::f64::consts::PI / 12.0).unwrap();
    for s in [at(105.0), at(125.0), deep] {
        let e = simulate_joint(&s, 1_000_000, 7).unwrap();
        for n in [Network::S2g, Network::A2a(IcMode::Imperfect), Network::A2a(IcMode::Perfect)] {
            let reference = outage(&s, n, Method::Integral).unwrap().value;
            let est = e.get(n);
            assert!((est.value - reference).abs() <= 3.0 * est.std_error, "{n:?}: {} ± {} vs {reference}", est.value, est.std_error);
        }
    }
}

#[test]
fn standard_error_halves_with_four_times_the_trials() {
    let s = at(112.0);
    let a = simulate_op(&s, Network::S2g, 100_000, 1).unwrap();
    let b = simulate_op(&s, Network::S2g, 400_000, 2).unwrap();
    let ratio = a.std_error / b.std_error;
    assert!((ratio - 2.0).abs() < 0.4, "{ratio}");
}

#[test]
fn throughput_matches_analytic_and_reduces_without_sharing() {
    let s = at(120.0);
    let mc = simulate_throughput(&s, 0.1, 0.1, IcMode::Imperfect, 400_000, 5).unwrap();
    let exact = avg_throughput(&s, 0.1, 0.1, IcMode::Imperfect, Method::Integral).unwrap();
    assert!((mc.value - exact.value).abs() <= 3.0 * mc.std_error, "{} ± {} vs {}", mc.value, mc.std_error, exact.value);

    let mut solo = s.clone();
    solo.swipt.sharing = 1.0;
    let t = simulate_throughput(&solo, 0.1, 0.1, IcMode::Imperfect, 100_000, 5).unwrap();
    assert_eq!(t.outage_a2a.value, 1.0);
    assert!((t.value - 0.3 * 0.1 * (1.0 - t.outage_s2g.value)).abs() < 1e-15);

    let mut late = s.clone();
    late.swipt.time_split = 0.99;
    assert!(simulate_throughput(&late, 0.1, 0.1, IcMode::Imperfect, 10_000, 5).unwrap().value < 1e-3);
}

#[test]
fn paired_cancellation_modes() {
    for seed in 0..4 {
        let c = common_random_numbers_compare(&at(110.0 + 5.0 * seed as f64), 100_000, seed).unwrap();
        assert!(c.difference >= 0.0);
        assert!(c.difference > 3.0 * c.difference_se, "seed {seed}: {} ± {}", c.difference, c.difference_se);
    }
    let mut solo = at(120.0);
    solo.swipt.sharing = 1.0;
    let c = common_random_numbers_compare(&solo, 10_000, 1).unwrap();
    assert_eq!((c.imperfect.value, c.perfect.value, c.difference), (1.0, 1.0, 0.0));
}

proptest::proptest! {
    #![proptest_config(proptest::prelude::ProptestConfig::with_cases(16))]
    #[test]
    fn estimates_are_probabilities_and_cancellation_never_hurts(
        mu in 0.3f64..0.95, rho in 0.05f64..0.8, eta in 90.0f64..150.0, seed in 0u64..1000,
    ) {
        let mut s = at(eta);
        s.swipt.sharing = mu;
        s.swipt.time_split = rho;
        let s = s.with_rates(0.1, 0.1).unwrap();
        let c = common_random_numbers_compare(&s, 5_000, seed).unwrap();
        proptest::prop_assert!((0.0..=1.0).contains(&c.imperfect.value));
        proptest::prop_assert!(c.perfect.value <= c.imperfect.value);
        proptest::prop_assert!(c.difference >= 0.0);
    }
}
