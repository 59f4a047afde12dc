use specfun::oracle::{check, parse};
use std::collections::BTreeMap;

const FIXTURE: &str = include_str!("fixtures/oracle.tsv");

#[test]
fn fixture_covers_every_function_family() {
    let rows = parse(FIXTURE).unwrap();
    assert!(rows.len() >= 200, "only {} rows", rows.len());
    let mut kinds = BTreeMap::new();
    for r in &rows {
        *kinds.entry(r.kind.as_str()).or_insert(0) += 1;
    }
    for k in ["delta_gamma", "bessel_j1", "bessel_j3", "bessel_i0", "bessel_k", "whittaker_w", "meijer_g0110", "meijer_g2002", "meijer_g2123", "meijer_g2113"] {
        assert!(kinds.contains_key(k), "missing {k}");
    }
}

#[test]
fn every_fixture_row_matches_its_reference() {
    let rows = parse(FIXTURE).unwrap();
    let outcomes = check(&rows);
    let failures: Vec<_> = outcomes.iter().filter(|o| !o.passed()).collect();
    for f in &failures {
        eprintln!(
            "{} {:?} x={} expected {} got {:?} (rel {:.2e} > {:.0e})",
            f.row.kind, f.row.params, f.row.arg, f.row.expected, f.computed, f.rel_error, f.tolerance
        );
    }
    assert!(failures.is_empty(), "{} of {} rows failed", failures.len(), outcomes.len());
}
