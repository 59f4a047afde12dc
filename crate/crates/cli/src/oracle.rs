//! The special-function reference table, bundled into the binary.

use specfun::oracle::{check, parse, OracleOutcome, ParseError};
use std::collections::BTreeMap;

pub const FIXTURE: &str = include_str!("../../specfun/tests/fixtures/oracle.tsv");

/// Per-family tally of one pass over the table.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FamilyReport {
    pub rows: usize,
    pub failed: usize,
    pub worst_rel_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub families: BTreeMap<String, FamilyReport>,
    pub failures: Vec<OracleOutcome>,
}

impl OracleReport {
    pub fn rows(&self) -> usize {
        self.families.values().map(|f| f.rows).sum()
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn run_fixture() -> Result<OracleReport, ParseError> {
    let outcomes = check(&parse(FIXTURE)?);
    let mut families: BTreeMap<String, FamilyReport> = BTreeMap::new();
    let mut failures = Vec::new();
    for o in outcomes {
        let f = families.entry(o.row.kind.clone()).or_default();
        f.rows += 1;
        f.worst_rel_error = f.worst_rel_error.max(o.rel_error);
        if !o.passed() {
            f.failed += 1;
            failures.push(o);
        }
    }
    Ok(OracleReport { families, failures })
}
