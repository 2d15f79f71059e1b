//! Per-point evaluation, parallel sweeps and CSV output.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use qbatt_core::liouville::{build, Superoperator};
use qbatt_core::matcore::CMatrix;
use qbatt_core::model::{ModelParams, StateSpec};
use qbatt_core::observe::{battery_metrics, concurrence, tomogram, BatteryMetrics, Tomogram};
use qbatt_core::reservoir::BathPair;
use qbatt_core::spectra::{analyze, long_time_state, min_eigenvalue, SpectralReport};
use rayon::prelude::*;

use crate::config::{Param, StateKind, SweepConfig};
use crate::error::CliError;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Everything a single grid point needs, resolved from config and axis values.
#[derive(Debug, Clone)]
pub struct PointSetup {
    pub params: ModelParams,
    pub baths: BathPair,
    pub state: StateSpec,
}

fn lookup(values: &BTreeMap<Param, f64>, p: Param) -> f64 {
    values.get(&p).copied().unwrap_or(0.0)
}

pub fn resolve(cfg: &SweepConfig, at: &[(Param, f64)]) -> Result<PointSetup, qbatt_core::Error> {
    let mut v = cfg.fixed.clone();
    for &(p, x) in at {
        v.insert(p, x);
    }
    let params = ModelParams::from_detuning(lookup(&v, Param::Delta), lookup(&v, Param::DeltaBar), 1.0, lookup(&v, Param::F))?
        .with_omega_d(cfg.omega_d)
        .with_omega_battery(cfg.omega);
    params.validate()?;
    let t_bar = v.get(&Param::T).or(v.get(&Param::TBar)).copied().unwrap_or(1.0);
    let mu_bar = v.get(&Param::Mu).or(v.get(&Param::MuBar)).copied().unwrap_or(0.0);
    let baths = BathPair::from_means(cfg.statistics, t_bar, lookup(&v, Param::DT), mu_bar, lookup(&v, Param::DMu), cfg.alpha, cfg.cutoff)?;
    let state = match cfg.state {
        StateKind::Eg => StateSpec::ProductEg,
        StateKind::Ge => StateSpec::ProductGe,
        StateKind::Bloch => StateSpec::Bloch { theta: lookup(&v, Param::Theta), phi: lookup(&v, Param::Phi) },
        StateKind::Explicit => StateSpec::normalized(cfg.amplitudes.unwrap_or_default())?,
    };
    Ok(PointSetup { params, baths, state })
}

#[derive(Debug, Clone)]
pub struct PointResult {
    pub report: SpectralReport,
    /// Bare-basis state at `τ`.
    pub rho: CMatrix,
    pub metrics: BatteryMetrics,
    pub concurrence: f64,
    pub tomogram: Tomogram,
    pub rho_min_eig: f64,
}

pub fn generator(cfg: &SweepConfig, setup: &PointSetup) -> Result<Superoperator, qbatt_core::Error> {
    build(cfg.equation, &setup.params, &setup.baths, cfg.lindblad_jumps)
}

/// Full pipeline for one grid point.
pub fn evaluate(cfg: &SweepConfig, at: &[(Param, f64)]) -> Result<PointResult, qbatt_core::Error> {
    let setup = resolve(cfg, at)?;
    let l = generator(cfg, &setup)?;
    let report = analyze(&l, cfg.gap_tol)?;
    let rho0 = setup.state.density_matrix()?;
    let rho = long_time_state(&l, &rho0, cfg.tau)?.hermitian_part();
    let metrics = battery_metrics(&rho, setup.params.omega_battery)?;
    Ok(PointResult { concurrence: concurrence(&rho)?, tomogram: tomogram(&rho)?, rho_min_eig: min_eigenvalue(&rho)?, report, rho, metrics })
}

pub fn describe_point(at: &[(Param, f64)]) -> String {
    at.iter().map(|(p, x)| format!("{}={}", p.as_str(), x)).collect::<Vec<_>>().join(",")
}

/// Like [`evaluate`] but with the grid point attached to any error.
pub fn run_point(cfg: &SweepConfig, at: &[(Param, f64)]) -> Result<PointResult, CliError> {
    evaluate(cfg, at).map_err(|source| CliError::Numeric { point: describe_point(at), source })
}

pub struct SweepRow {
    pub at: Vec<(Param, f64)>,
    pub result: Result<PointResult, String>,
}

/// Evaluates every grid point on a pool of `threads` workers. Rows come back
/// in grid order regardless of scheduling.
pub fn run_sweep(cfg: &SweepConfig, threads: usize) -> Result<Vec<SweepRow>, CliError> {
    cfg.validate()?;
    let pool =
        rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build().map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    let rows = pool.install(|| {
        (0..cfg.grid_len())
            .into_par_iter()
            .map(|k| {
                let at = cfg.grid_point(k);
                let result = evaluate(cfg, &at).map_err(|e| e.to_string());
                SweepRow { at, result }
            })
            .collect()
    });
    Ok(rows)
}

fn num(x: f64) -> String {
    format!("{x:.8e}")
}

pub fn csv_header(cfg: &SweepConfig) -> Vec<String> {
    let mut h: Vec<String> = cfg.axes.iter().map(|a| a.param.as_str().to_string()).collect();
    for c in ["gap", "bistable", "energy", "ergotropy", "efficiency", "concurrence"] {
        h.push(c.to_string());
    }
    h.extend(Tomogram::labels());
    h.push("rho_min_eig".into());
    h.push("status".into());
    h
}

/// CSV text: `# meta:` block, header, one row per grid point.
pub fn to_csv(cfg: &SweepConfig, rows: &[SweepRow]) -> String {
    let mut out = String::new();
    for line in cfg.to_text().lines() {
        let _ = writeln!(out, "# meta: {line}");
    }
    let _ = writeln!(out, "# meta: version = {VERSION}");
    let _ = writeln!(out, "{}", csv_header(cfg).join(","));
    let width = csv_header(cfg).len();
    for row in rows {
        let mut cells: Vec<String> = row.at.iter().map(|&(_, x)| num(x)).collect();
        match &row.result {
            Ok(r) => {
                cells.push(num(r.report.gap));
                cells.push(u8::from(r.report.bistable).to_string());
                cells.push(num(r.metrics.energy));
                cells.push(num(r.metrics.ergotropy));
                cells.push(num(r.metrics.efficiency));
                cells.push(num(r.concurrence));
                cells.extend(r.tomogram.values().map(num));
                cells.push(num(r.rho_min_eig));
                cells.push("ok".into());
            }
            Err(msg) => {
                while cells.len() < width - 1 {
                    cells.push("NaN".into());
                }
                let clean: String = msg.chars().map(|c| if c == ',' || c == '\n' { ';' } else { c }).collect();
                cells.push(format!("error: {clean}"));
            }
        }
        let _ = writeln!(out, "{}", cells.join(","));
    }
    out
}

/// Human-readable dump of one point, including the full Liouvillian spectrum.
pub fn point_dump(cfg: &SweepConfig, at: &[(Param, f64)]) -> Result<String, CliError> {
    let r = run_point(cfg, at)?;
    let setup = resolve(cfg, at).map_err(|source| CliError::Numeric { point: describe_point(at), source })?;
    let mut s = String::new();
    let p = &setup.params;
    let b = &setup.baths;
    let _ = writeln!(s, "point: {}", describe_point(at));
    let _ = writeln!(s, "equation: {}", cfg.equation.as_str());
    let _ = writeln!(s, "delta1 = {}  delta2 = {}  F = {}  omega_d = {}", p.delta1, p.delta2, p.drive, p.omega_d);
    let _ = writeln!(
        s,
        "T1 = {}  T2 = {}  mu1 = {}  mu2 = {}  ({})",
        b.charger.temperature,
        b.battery.temperature,
        b.charger.chemical_potential,
        b.battery.chemical_potential,
        b.statistics().as_str()
    );
    let _ = writeln!(
        s,
        "gap = {}  kernel_dim = {}  bistable = {}  diagonalizable = {}",
        num(r.report.gap),
        r.report.kernel_dim,
        r.report.bistable,
        r.report.diagonalizable
    );
    let _ = writeln!(s, "spectrum:");
    for (i, z) in r.report.eigenvalues.iter().enumerate() {
        let _ = writeln!(s, "  {i:2}  {} {:+.8e}i", num(z.re), z.im);
    }
    let m = &r.metrics;
    let _ = writeln!(s, "energy = {}  ergotropy = {}  efficiency = {}", num(m.energy), num(m.ergotropy), num(m.efficiency));
    let _ = writeln!(s, "n_pop = {}  |coh| = {}  concurrence = {}", num(m.n_pop), num(m.coh.norm()), num(r.concurrence));
    let _ = writeln!(s, "rho_min_eig = {}", num(r.rho_min_eig));
    let _ = writeln!(s, "rho(tau), bare basis ee, eg, ge, gg:");
    for i in 0..4 {
        let row: Vec<String> = (0..4).map(|j| format!("{:+.6e}{:+.6e}i", r.rho[(i, j)].re, r.rho[(i, j)].im)).collect();
        let _ = writeln!(s, "  {}", row.join("  "));
    }
    Ok(s)
}

/// Parses `k=v,k=v` into axis-style overrides.
pub fn parse_at(text: &str) -> Result<Vec<(Param, f64)>, CliError> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|kv| {
            let (k, v) = kv.split_once('=').ok_or_else(|| CliError::Config(format!("'{kv}' must read key=value")))?;
            let x: f64 = v.trim().parse().map_err(|_| CliError::Config(format!("'{v}' is not a number")))?;
            Ok((k.trim().parse()?, x))
        })
        .collect()
}
