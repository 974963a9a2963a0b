#![allow(dead_code)]

use std::path::PathBuf;

use num_bigint::BigUint;

/// One row of the per-dimension reference table.
pub struct DimensionRow {
    pub n: u32,
    pub w: f64,
    pub h: f64,
    pub k0: u32,
    pub mi: BigUint,
}

pub struct EigenvalueRow {
    pub n: u32,
    pub m: u32,
    pub lambda: f64,
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn records(name: &str) -> Vec<csv::StringRecord> {
    let mut reader = csv::Reader::from_path(data(name)).expect("reference table");
    reader.records().map(|r| r.expect("well-formed row")).collect()
}

/// Published W, H, K0 and MI for n = 2..100.
pub fn dimension_table() -> Vec<DimensionRow> {
    records("tables_n.csv")
        .iter()
        .map(|r| DimensionRow {
            n: r[0].parse().unwrap(),
            w: r[1].parse().unwrap(),
            h: r[2].parse().unwrap(),
            k0: r[3].parse().unwrap(),
            mi: r[4].parse().unwrap(),
        })
        .collect()
}

/// Published Lambda_0(n, m) for n = 2..20, m = 2..10.
pub fn eigenvalue_table() -> Vec<EigenvalueRow> {
    records("lambda.csv")
        .iter()
        .map(|r| EigenvalueRow {
            n: r[0].parse().unwrap(),
            m: r[1].parse().unwrap(),
            lambda: r[2].parse().unwrap(),
        })
        .collect()
}
