//! Command-line front end: sweeps over `n` (and `m`), written as CSV or
//! JSON with a manifest next to every data file.
//!
//! ```text
//! catenoid geometry --n 2..100 --table5
//! catenoid eig --n 2..20 --m 2..10 --parity even
//! catenoid index --n 2..100 --format json --out out/index.json
//! catenoid asym --kind K0 --n 10..10000
//! catenoid spheres --max 12
//! catenoid selftest
//! ```
//!
//! Exit codes: 0 ok, 1 usage or I/O error, 2 solver failure in some row,
//! 3 uncertified index row under `--strict`.

mod output;
mod range;
mod rows;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::asymptotics::{deviation_report, log_spaced, DeviationKind};
use crate::geometry::solve_geometry;
use crate::index::{index_report, EXACT_INDEX_LIMIT};
use crate::kernels::SolverConfig;
use crate::spectrum::{steklov, steklov_on, Parity};
use crate::spheres::{negative_modes, sphere_morse_index, sphere_morse_index_by_rows};

pub use output::{format_real, manifest_path, render, Cell, Format, Record, RowFlag, RunManifest};
pub use range::IntRange;
pub use rows::{CheckRow, EigenvalueRow, GeometryRow, IndexRow, SphereRow};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_SOLVER: i32 = 2;
pub const EXIT_UNCERTIFIED: i32 = 3;

/// Largest dimension the sweeps accept.
pub const MAX_DIMENSION: u32 = 100_000;

#[derive(Debug, Parser)]
#[command(
    name = "catenoid",
    version,
    about = "Geometry, Steklov eigenvalues and Morse index of free boundary minimal catenoids"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Relative tolerance of the ODE integrator.
    #[arg(long, global = true, env = "CATENOID_TOL")]
    pub tol: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Data file; a `<out>.manifest.json` is written next to it. Stdout if absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Abort on the first failed row; exit 3 on uncertified index rows.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Round reals to five decimals (ties to even), as in the published tables.
    #[arg(long, global = true)]
    pub table5: bool,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Grid {
    /// Linear up to 200 points, log-spaced beyond.
    Auto,
    Linear,
    Log,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// W, H, L and R for each n.
    Geometry {
        #[arg(long, default_value = "2..100")]
        n: IntRange,
    },
    /// Steklov eigenvalues Lambda_i(n, m).
    Eig {
        #[arg(long, default_value = "2..20")]
        n: IntRange,
        #[arg(long, default_value = "2..10")]
        m: IntRange,
        #[arg(long, default_value = "even")]
        parity: Parity,
    },
    /// K0, K1, Steklov and Morse index with certification.
    Index {
        #[arg(long, default_value = "2..100")]
        n: IntRange,
        /// Report only ln MI (no exact SI or MI).
        #[arg(long)]
        log_only: bool,
    },
    /// Computed values against their large-n predictions.
    Asym {
        #[arg(long, default_value = "lambda")]
        kind: DeviationKind,
        #[arg(long, default_value = "10..10000")]
        n: IntRange,
        /// Modes for `--kind lambda`.
        #[arg(long, default_value = "10")]
        m: IntRange,
        #[arg(long, value_enum, default_value_t = Grid::Auto)]
        grid: Grid,
        #[arg(long, default_value_t = 40)]
        per_decade: u32,
    },
    /// Morse index of the sphere products S^p x S^q.
    Spheres {
        /// Use all 1 <= p <= q <= max (ignored when --p/--q are given).
        #[arg(long, default_value_t = 12)]
        max: u32,
        #[arg(long)]
        p: Option<IntRange>,
        #[arg(long)]
        q: Option<IntRange>,
    },
    /// Quick end-to-end checks against published values.
    Selftest,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Geometry { .. } => "geometry",
            Command::Eig { .. } => "eig",
            Command::Index { .. } => "index",
            Command::Asym { .. } => "asym",
            Command::Spheres { .. } => "spheres",
            Command::Selftest => "selftest",
        }
    }
}

/// Rendered data plus per-row status.
struct Table {
    data: Vec<u8>,
    flags: Vec<RowFlag>,
    parameters: Value,
}

impl Table {
    fn new<R: Record>(rows: &[R], flags: Vec<RowFlag>, parameters: Value, common: &Common) -> Result<Self, Failure> {
        let data = render(rows, common.format, common.table5).map_err(Failure::Usage)?;
        Ok(Self { data, flags, parameters })
    }
}

enum Failure {
    Usage(String),
    Solver(String),
}

fn flag(key: impl ToString, ok: bool, certified: bool) -> RowFlag {
    RowFlag {
        key: key.to_string(),
        ok,
        certified,
    }
}

/// Parse `args` (program name first) and run. Data goes to `--out` or
/// `stdout`; diagnostics go to `stderr`. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{text}");
                EXIT_OK
            };
        }
    };
    let arguments = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    execute(&cli, arguments, stdout, stderr)
}

/// Run an already parsed command line.
pub fn execute(cli: &Cli, arguments: Vec<String>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let common = &cli.common;
    let config = match common.tol {
        Some(tol) => SolverConfig::with_rel_tol(tol),
        None => SolverConfig::default(),
    };
    if let Err(e) = config.validate() {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_USAGE;
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(common.threads).build() {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(stderr, "error: cannot start worker threads: {e}");
            return EXIT_USAGE;
        }
    };

    let started = Instant::now();
    let table = pool.install(|| match &cli.command {
        Command::Geometry { n } => cmd_geometry(n, &config, common),
        Command::Eig { n, m, parity } => cmd_eigenvalues(n, m, *parity, &config, common),
        Command::Index { n, log_only } => cmd_index(n, *log_only, &config, common),
        Command::Asym {
            kind,
            n,
            m,
            grid,
            per_decade,
        } => cmd_asymptotics(*kind, n, m, *grid, *per_decade, &config, common),
        Command::Spheres { max, p, q } => cmd_spheres(*max, p.as_ref(), q.as_ref(), common),
        Command::Selftest => cmd_selftest(&config, common),
    });
    let table = match table {
        Ok(t) => t,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
        Err(Failure::Solver(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_SOLVER;
        }
    };

    let failed = table.flags.iter().filter(|f| !f.ok).count();
    let uncertified = table.flags.iter().filter(|f| f.ok && !f.certified).count();
    if failed > 0 && common.strict {
        let first = table.flags.iter().find(|f| !f.ok).map(|f| f.key.as_str()).unwrap_or("");
        let _ = writeln!(stderr, "error: solver failed for row {first}; nothing written (--strict)");
        return EXIT_SOLVER;
    }
    let manifest = RunManifest {
        command: cli.command.name().to_string(),
        arguments,
        parameters: table.parameters,
        tolerances: config,
        version: env!("CARGO_PKG_VERSION").to_string(),
        wall_time_seconds: started.elapsed().as_secs_f64(),
        format: common.format,
        table5: common.table5,
        data_file: common.out.as_ref().map(|p| p.display().to_string()),
        rows: table.flags.len(),
        failed_rows: failed,
        uncertified_rows: uncertified,
        row_flags: table.flags,
    };
    if let Err(e) = output::emit(&table.data, common.out.as_deref(), &manifest, stdout) {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_USAGE;
    }
    if failed > 0 {
        let _ = writeln!(stderr, "{failed} row(s) failed; see the error column");
        EXIT_SOLVER
    } else if uncertified > 0 {
        let _ = writeln!(stderr, "{uncertified} index row(s) are not certified");
        if common.strict {
            EXIT_UNCERTIFIED
        } else {
            EXIT_OK
        }
    } else {
        EXIT_OK
    }
}

fn dimensions(n: &IntRange, lo: u32) -> Result<Vec<u32>, Failure> {
    if n.min() < lo || n.max() > MAX_DIMENSION {
        return Err(Failure::Usage(format!(
            "--n must lie in {lo}..{MAX_DIMENSION}, got {n}"
        )));
    }
    Ok(n.values())
}

fn cmd_geometry(n: &IntRange, config: &SolverConfig, common: &Common) -> Result<Table, Failure> {
    let ns = dimensions(n, 2)?;
    let rows: Vec<GeometryRow> = ns
        .par_iter()
        .map(|&n| match solve_geometry(n, config) {
            Ok(g) => GeometryRow {
                n,
                w: g.w,
                h: g.h,
                l: g.l,
                l_infinite: g.l.is_infinite(),
                r: g.r,
                error: None,
            },
            Err(e) => GeometryRow {
                n,
                w: f64::NAN,
                h: f64::NAN,
                l: f64::NAN,
                l_infinite: false,
                r: f64::NAN,
                error: Some(e.to_string()),
            },
        })
        .collect();
    let flags = rows.iter().map(|r| flag(r.n, r.error.is_none(), true)).collect();
    Table::new(&rows, flags, json!({ "n": n.to_string() }), common)
}

fn cmd_eigenvalues(
    n: &IntRange,
    m: &IntRange,
    parity: Parity,
    config: &SolverConfig,
    common: &Common,
) -> Result<Table, Failure> {
    let ns = dimensions(n, 2)?;
    let ms = m.values();
    let rows: Vec<EigenvalueRow> = ns
        .par_iter()
        .flat_map_iter(|&n| {
            let geometry = solve_geometry(n, config);
            ms.iter()
                .map(|&m| {
                    let lambda = geometry
                        .as_ref()
                        .map_err(Clone::clone)
                        .and_then(|g| steklov_on(g, m, parity, config));
                    match lambda {
                        Ok(e) => EigenvalueRow {
                            n,
                            m,
                            parity: parity.to_string(),
                            lambda: e.lambda,
                            lambda_neg_infinite: e.lambda == f64::NEG_INFINITY,
                            error: None,
                        },
                        Err(e) => EigenvalueRow {
                            n,
                            m,
                            parity: parity.to_string(),
                            lambda: f64::NAN,
                            lambda_neg_infinite: false,
                            error: Some(e.to_string()),
                        },
                    }
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let flags = rows
        .iter()
        .map(|r| flag(format!("n={},m={}", r.n, r.m), r.error.is_none(), true))
        .collect();
    let params = json!({ "n": n.to_string(), "m": m.to_string(), "parity": parity.to_string() });
    Table::new(&rows, flags, params, common)
}

fn cmd_index(n: &IntRange, log_only: bool, config: &SolverConfig, common: &Common) -> Result<Table, Failure> {
    let ns = dimensions(n, 2)?;
    let rows: Vec<IndexRow> = ns
        .par_iter()
        .map(|&n| match index_report(n, config) {
            Ok(r) => IndexRow {
                n,
                k0: r.k0,
                k1: r.k1,
                si: (!log_only).then(|| r.steklov_index.to_string()),
                mi: if log_only { None } else { r.morse_index.as_ref().map(BigUint::to_string) },
                log_mi: r.log_morse_index,
                margin: r.margin,
                error_estimate: r.error_estimate,
                certified: r.certified,
                error: None,
            },
            Err(e) => IndexRow {
                n,
                k0: 0,
                k1: 0,
                si: None,
                mi: None,
                log_mi: f64::NAN,
                margin: f64::NAN,
                error_estimate: f64::NAN,
                certified: false,
                error: Some(e.to_string()),
            },
        })
        .collect();
    let flags = rows.iter().map(|r| flag(r.n, r.error.is_none(), r.certified)).collect();
    let params = json!({
        "n": n.to_string(),
        "log_only": log_only,
        "exact_index_limit": EXACT_INDEX_LIMIT,
    });
    Table::new(&rows, flags, params, common)
}

fn cmd_asymptotics(
    kind: DeviationKind,
    n: &IntRange,
    m: &IntRange,
    grid: Grid,
    per_decade: u32,
    config: &SolverConfig,
    common: &Common,
) -> Result<Table, Failure> {
    dimensions(n, 3)?;
    let log = match grid {
        Grid::Linear => false,
        Grid::Log => true,
        Grid::Auto => n.len() > 200,
    };
    let ns = if log {
        if !n.is_span() {
            return Err(Failure::Usage("a log-spaced grid needs --n lo..hi".into()));
        }
        log_spaced(n.min(), n.max(), per_decade)
    } else {
        n.values()
    };
    let ms = m.values();
    let report = deviation_report(kind, &ns, &ms, config).map_err(|e| Failure::Solver(e.to_string()))?;
    let flags = report
        .rows
        .iter()
        .map(|r| {
            let key = match r.m {
                Some(m) => format!("n={},m={}", r.n, m),
                None => format!("n={},{}", r.n, r.quantity),
            };
            flag(key, true, r.certified)
        })
        .collect();
    let params = json!({
        "kind": kind.to_string(),
        "n": n.to_string(),
        "m": m.to_string(),
        "grid": if log { "log" } else { "linear" },
        "per_decade": per_decade,
        "points": ns,
    });
    Table::new(&report.rows, flags, params, common)
}

fn cmd_spheres(max: u32, p: Option<&IntRange>, q: Option<&IntRange>, common: &Common) -> Result<Table, Failure> {
    let default = IntRange::span(1, max.max(1));
    let ps = p.unwrap_or(&default).values();
    let qs = q.unwrap_or(&default).values();
    if ps.contains(&0) || qs.contains(&0) {
        return Err(Failure::Usage("sphere dimensions must be positive".into()));
    }
    let mut rows = Vec::new();
    for &p in &ps {
        for &q in qs.iter().filter(|&&q| q >= p) {
            let solver = |e: crate::Error| Failure::Solver(e.to_string());
            let mi = sphere_morse_index(p, q).map_err(solver)?;
            let by_rows = sphere_morse_index_by_rows(p, q).map_err(solver)?;
            let modes: Vec<String> = negative_modes(p, q)
                .map_err(solver)?
                .iter()
                .map(|m| format!("({},{})", m.i, m.j))
                .collect();
            let expected = p + q + 3;
            rows.push(SphereRow {
                p,
                q,
                matches: mi == BigUint::from(expected) && by_rows == mi,
                mi: mi.to_string(),
                mi_rows: by_rows.to_string(),
                negative_modes: modes.join(";"),
                expected,
            });
        }
    }
    let flags = rows
        .iter()
        .map(|r| flag(format!("p={},q={}", r.p, r.q), true, r.matches))
        .collect();
    let params = json!({
        "p": p.map_or(default.to_string(), ToString::to_string),
        "q": q.map_or(default.to_string(), ToString::to_string),
    });
    Table::new(&rows, flags, params, common)
}

/// Published values that a healthy build must reproduce.
pub fn selftest_checks(config: &SolverConfig) -> Vec<CheckRow> {
    let near = |name: &str, got: crate::Result<f64>, want: f64, tol: f64| match got {
        Ok(v) => CheckRow {
            check: name.to_string(),
            passed: (v - want).abs() <= tol,
            detail: format!("got {v:.7}, expected {want} +- {tol:e}"),
        },
        Err(e) => CheckRow {
            check: name.to_string(),
            passed: false,
            detail: e.to_string(),
        },
    };
    let lambda = |n, m, parity| steklov(n, m, parity, config).map(|e| e.lambda);
    let mut checks = vec![
        near("W(2)", solve_geometry(2, config).map(|g| g.w), 1.19968, 5e-6),
        near("H(2)", solve_geometry(2, config).map(|g| g.h), 1.81017, 5e-6),
        near("W(100)", solve_geometry(100, config).map(|g| g.w), 0.01582, 5e-6),
        near("H(100)", solve_geometry(100, config).map(|g| g.h), 1.04322, 5e-6),
        near("Lambda_0(2,10)", lambda(2, 10, Parity::Even), 11.95684, 5e-6),
        near("Lambda_0(20,10)", lambda(20, 10, Parity::Even), 9.66755, 5e-6),
        near("Lambda_0(7,7)", lambda(7, 7, Parity::Even), 7.0, 1e-8),
        near("Lambda_1(5,1)", lambda(5, 1, Parity::Odd), 1.0, 1e-8),
        near("Lambda_0(91,8)", lambda(91, 8, Parity::Even), 0.99545, 5e-6),
        near("Lambda_0(11,3)", lambda(11, 3, Parity::Even), 1.02647, 5e-6),
    ];
    for (n, want) in [(2u32, "4"), (12, "443"), (100, "350319724626")] {
        checks.push(match index_report(n, config) {
            Ok(r) => {
                let got = r.morse_index.map(|v| v.to_string()).unwrap_or_default();
                CheckRow {
                    check: format!("MI({n})"),
                    passed: got == want && r.certified,
                    detail: format!("got {got} (certified: {}), expected {want}", r.certified),
                }
            }
            Err(e) => CheckRow {
                check: format!("MI({n})"),
                passed: false,
                detail: e.to_string(),
            },
        });
    }
    let spheres_ok = (1..=12u32).all(|p| {
        (p..=12).all(|q| sphere_morse_index(p, q).is_ok_and(|v| v == BigUint::from(p + q + 3)))
    });
    checks.push(CheckRow {
        check: "MI(S^p x S^q) = p+q+3".into(),
        passed: spheres_ok,
        detail: "1 <= p <= q <= 12".into(),
    });
    checks
}

fn cmd_selftest(config: &SolverConfig, common: &Common) -> Result<Table, Failure> {
    let rows = selftest_checks(config);
    let flags = rows.iter().map(|r| flag(&r.check, r.passed, true)).collect();
    Table::new(&rows, flags, json!({}), common)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("catenoid").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn geometry_at_two_has_infinite_length() {
        let (code, out, _) = run_capture(&["geometry", "--n", "2", "--table5"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out, "n,W,H,L,R,error\n2,1.19968,1.81017,inf,2.17162,\n");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_capture(&["geometry", "--n", "1"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["eig", "--parity", "sideways"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["nonsense"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["--tol", "-1", "geometry", "--n", "3"]).0, EXIT_USAGE);
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("selftest"));
    }

    #[test]
    fn odd_linear_mode_is_one() {
        let (code, out, _) = run_capture(&["eig", "--n", "5", "--m", "1", "--parity", "odd", "--table5"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.lines().nth(1), Some("5,1,odd,1.00000,"));
    }
}
