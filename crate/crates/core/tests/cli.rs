//! The command-line front end, driven in-process.

use std::fs;

use catenoid::asymptotics::DeviationRow;
use catenoid::cli::{
    manifest_path, run, EigenvalueRow, GeometryRow, IndexRow, RunManifest, SphereRow, EXIT_OK, EXIT_USAGE,
};

fn run_args(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("catenoid").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = run_args(args);
    assert_eq!(code, EXIT_OK, "{args:?}: {err}");
    out
}

#[test]
fn geometry_json_round_trips() {
    let out = ok(&["geometry", "--n", "2..4", "--format", "json"]);
    let rows: Vec<GeometryRow> = serde_json::from_str(&out).unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows[0].l.is_infinite() && rows[0].l_infinite);
    assert!(rows[1].l.is_finite() && !rows[1].l_infinite);
    let again = serde_json::to_string_pretty(&rows).unwrap() + "\n";
    assert_eq!(again, out);

    let direct = catenoid::geometry::solve_geometry(3, &Default::default()).unwrap();
    assert_eq!(rows[1].w, direct.w);
    assert_eq!(rows[1].h, direct.h);
}

#[test]
fn every_row_type_round_trips() {
    let eig: Vec<EigenvalueRow> =
        serde_json::from_str(&ok(&["eig", "--n", "3", "--m", "0..3", "--format", "json"])).unwrap();
    assert_eq!(eig.len(), 4);
    assert_eq!(eig[0].lambda, f64::NEG_INFINITY);
    assert!(eig[0].lambda_neg_infinite);

    let index: Vec<IndexRow> = serde_json::from_str(&ok(&["index", "--n", "2..6", "--format", "json"])).unwrap();
    let mi: Vec<&str> = index.iter().map(|r| r.mi.as_deref().unwrap()).collect();
    assert_eq!(mi, ["4", "5", "6", "21", "28"]);
    assert!(index.iter().all(|r| r.certified && r.k1 == 1));

    let asym: Vec<DeviationRow> =
        serde_json::from_str(&ok(&["asym", "--kind", "K0", "--n", "10..20", "--format", "json"])).unwrap();
    assert_eq!(asym.len(), 11);

    let spheres: Vec<SphereRow> =
        serde_json::from_str(&ok(&["spheres", "--max", "4", "--format", "json"])).unwrap();
    assert_eq!(spheres.len(), 10);
    assert!(spheres.iter().all(|r| r.matches));
}

#[test]
fn output_is_deterministic() {
    let args = ["eig", "--n", "2..8", "--m", "1..6", "--threads", "3"];
    let first = ok(&args);
    let second = ok(&["eig", "--n", "2..8", "--m", "1..6", "--threads", "1"]);
    assert_eq!(first, second);
    assert_eq!(first, ok(&args));
}

#[test]
fn files_come_with_a_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("nested/index.csv");
    let path = out.to_str().unwrap();
    ok(&["index", "--n", "90..92", "--out", path, "--tol", "1e-12"]);

    let data = fs::read_to_string(&out).unwrap();
    assert!(data.starts_with("n,K0,K1,SI,MI,logMI,margin,error_estimate,certified,error\n"));
    assert_eq!(data.lines().count(), 4);
    assert!(data.contains("\n91,9,1,170212690388,170212690389,"));

    let manifest: RunManifest = serde_json::from_str(&fs::read_to_string(manifest_path(&out)).unwrap()).unwrap();
    assert_eq!(manifest.command, "index");
    assert_eq!(manifest.rows, 3);
    assert_eq!(manifest.uncertified_rows, 0);
    assert_eq!(manifest.tolerances.rel_tol, 1e-12);
    assert_eq!(manifest.row_flags.len(), 3);

    ok(&["index", "--n", "90..92", "--out", path, "--tol", "1e-12"]);
    assert_eq!(fs::read_to_string(&out).unwrap(), data);
}

#[test]
fn table_layout_rounds_to_five_decimals() {
    let out = ok(&["geometry", "--n", "2..3", "--table5"]);
    assert_eq!(out.lines().nth(1).unwrap(), "2,1.19968,1.81017,inf,2.17162,");
    assert!(out.lines().nth(2).unwrap().starts_with("3,0.67715,1.60312,1.31103,"));

    let json = ok(&["eig", "--n", "7", "--m", "7", "--format", "json", "--table5"]);
    let rows: Vec<EigenvalueRow> = serde_json::from_str(&json).unwrap();
    assert_eq!(rows[0].lambda, 7.0);
}

#[test]
fn spike_rows_are_flagged() {
    let out = ok(&["asym", "--kind", "lambda", "--m", "10", "--n", "90..110"]);
    let mut reader = csv::Reader::from_reader(out.as_bytes());
    let spikes: Vec<u32> = reader
        .records()
        .map(|r| r.unwrap())
        .filter(|r| &r[8] == "true")
        .map(|r| r[0].parse().unwrap())
        .collect();
    assert!(spikes.contains(&100));
    assert!(!spikes.contains(&90) && !spikes.contains(&110));
}

#[test]
fn selftest_passes() {
    let out = ok(&["selftest"]);
    assert!(out.lines().skip(1).all(|l| l.contains(",true,")), "{out}");
}

#[test]
fn bad_input_is_a_usage_error() {
    assert_eq!(run_args(&["index", "--n", "0..3"]).0, EXIT_USAGE);
    assert_eq!(run_args(&["asym", "--n", "2..50"]).0, EXIT_USAGE);
    assert_eq!(run_args(&["spheres", "--p", "0"]).0, EXIT_USAGE);
    assert_eq!(run_args(&["geometry", "--format", "xml"]).0, EXIT_USAGE);
}
