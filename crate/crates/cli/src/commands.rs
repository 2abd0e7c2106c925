use pdm_core::coulomb_pdm::{order_scan, OrderScan, OrderingSign, PowerLawCoulomb, DEGENERATE_ENERGY_TOL};
use pdm_core::oracle::{solve_state, NumerovResult};
use pdm_core::recursion::{partial_sums, DEFAULT_CONVERGENCE_TOL};
use pdm_core::{table1, Problem, QuantumNumbers};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Format, PotentialKind, RunConfig};
use crate::error::{CliError, EXIT_MISMATCH};
use crate::render;

/// What a subcommand prints and the exit code it asks for.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub stdout: String,
    /// Diagnostics for stderr.
    pub notes: Vec<String>,
    pub code: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Units {
    pub hbar: f64,
    pub m_c: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Meta {
    pub units: Units,
    pub potential: PotentialKind,
    /// Yukawa screening rate; zero for Coulomb.
    pub mu: f64,
    pub abs: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleReport {
    pub energy: f64,
    pub nodes: u32,
    pub points: usize,
    pub r_max: f64,
    pub iterations: usize,
}

impl OracleReport {
    fn new(res: &NumerovResult, abs: bool) -> Self {
        Self {
            energy: signed(res.energy, abs),
            nodes: res.node_count(),
            points: res.grid.points,
            r_max: res.grid.r_max,
            iterations: res.iterations,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateReport {
    pub lambda: f64,
    pub a: f64,
    pub q: f64,
    pub n_r: u32,
    pub l: u32,
    pub r0: f64,
    pub omega: f64,
    /// `E_k`, always signed.
    pub corrections: Vec<f64>,
    pub partials: Vec<f64>,
    pub converged: bool,
    pub oracle: Option<OracleReport>,
    pub meta: Meta,
}

fn signed(e: f64, abs: bool) -> f64 {
    if abs {
        e.abs()
    } else {
        e
    }
}

fn meta(cfg: &RunConfig) -> Meta {
    Meta {
        units: Units {
            hbar: cfg.hbar,
            m_c: cfg.m_c,
        },
        potential: cfg.potential,
        mu: match cfg.potential {
            PotentialKind::Coulomb => 0.0,
            PotentialKind::Yukawa => cfg.mu,
        },
        abs: cfg.abs,
    }
}

fn state_report(cfg: &RunConfig, problem: &Problem, qn: &QuantumNumbers) -> Result<StateReport, CliError> {
    let expansion_err = |source| CliError::Expansion {
        n_r: qn.n_r,
        l: qn.l,
        source,
    };
    let exp = problem.expand(qn, cfg.order).map_err(expansion_err)?;
    let sums = partial_sums(&exp.table, qn, DEFAULT_CONVERGENCE_TOL);
    let oracle = if cfg.oracle {
        let res = solve_state(problem, qn).map_err(|source| CliError::Oracle {
            n_r: qn.n_r,
            l: qn.l,
            source,
        })?;
        Some(OracleReport::new(&res, cfg.abs))
    } else {
        None
    };
    Ok(StateReport {
        lambda: cfg.lambda,
        a: cfg.a,
        q: cfg.q,
        n_r: qn.n_r,
        l: qn.l,
        r0: sums.r0,
        omega: sums.omega,
        corrections: sums.corrections,
        partials: sums.partials.iter().map(|&e| signed(e, cfg.abs)).collect(),
        converged: sums.converged,
        oracle,
        meta: meta(cfg),
    })
}

/// Runs `f` over `items` in parallel and returns the results in input order;
/// the first failure in that order wins.
fn ordered<T: Sync, R: Send>(
    items: &[T],
    f: impl Fn(&T) -> Result<R, CliError> + Sync + Send,
) -> Result<Vec<R>, CliError> {
    let results: Vec<Result<R, CliError>> = items.par_iter().map(f).collect();
    results.into_iter().collect()
}

pub fn spectrum(cfg: &RunConfig) -> Result<Output, CliError> {
    let problem = cfg.problem()?;
    let qns = cfg.quantum_numbers()?;
    let reports = ordered(&qns, |qn| state_report(cfg, &problem, qn))?;
    let notes = reports
        .iter()
        .filter(|r| !r.converged)
        .map(|r| {
            format!(
                "state ({},{}): last correction above {DEFAULT_CONVERGENCE_TOL:e} of the sum",
                r.n_r, r.l
            )
        })
        .collect();
    Ok(Output {
        stdout: render::spectrum(cfg.format, &reports),
        notes,
        code: 0,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleStateReport {
    pub lambda: f64,
    pub a: f64,
    pub q: f64,
    pub n_r: u32,
    pub l: u32,
    pub oracle: OracleReport,
    pub meta: Meta,
}

pub fn oracle(cfg: &RunConfig) -> Result<Output, CliError> {
    let problem = cfg.problem()?;
    let qns = cfg.quantum_numbers()?;
    let reports = ordered(&qns, |qn| {
        let res = solve_state(&problem, qn).map_err(|source| CliError::Oracle {
            n_r: qn.n_r,
            l: qn.l,
            source,
        })?;
        Ok(OracleStateReport {
            lambda: cfg.lambda,
            a: cfg.a,
            q: cfg.q,
            n_r: qn.n_r,
            l: qn.l,
            oracle: OracleReport::new(&res, cfg.abs),
            meta: meta(cfg),
        })
    })?;
    Ok(Output {
        stdout: render::oracle(cfg.format, &reports),
        notes: Vec::new(),
        code: 0,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableColumn {
    pub lambda: f64,
    pub n_r: u32,
    pub l: u32,
    pub partials: Vec<f64>,
    pub e_num: f64,
}

pub fn table1(format: Format, abs: bool, perturb: Option<f64>) -> Result<Output, CliError> {
    let columns: Vec<table1::Column> = table1::columns().collect();
    let shift = perturb.unwrap_or(0.0);
    let computed = ordered(&columns, |col| {
        let problem = col.problem()?;
        let qn = col.quantum_numbers();
        let s = problem
            .spectrum(&qn, table1::ORDER)
            .map_err(|source| CliError::Expansion {
                n_r: qn.n_r,
                l: qn.l,
                source,
            })?;
        let res = solve_state(&problem, &qn).map_err(|source| CliError::Oracle {
            n_r: qn.n_r,
            l: qn.l,
            source,
        })?;
        Ok(TableColumn {
            lambda: col.lambda,
            n_r: col.n_r,
            l: col.l,
            partials: s.partials.iter().map(|e| e + shift).collect(),
            e_num: res.energy + shift,
        })
    })?;

    let mut notes = Vec::new();
    for (col, c) in columns.iter().zip(&computed) {
        for (k, e) in c.partials.iter().enumerate() {
            let reference = table1::PARTIALS[k][col.index];
            if !table1::matches_5dp(*e, reference) {
                notes.push(format!(
                    "lambda={} ({},{}) E^({k}): {:.7} != {reference:.5}",
                    c.lambda,
                    c.n_r,
                    c.l,
                    e.abs()
                ));
            }
        }
        let reference = table1::NUMERIC[col.index];
        if !table1::matches_5dp(c.e_num, reference) {
            notes.push(format!(
                "lambda={} ({},{}) E_num: {:.7} != {reference:.5}",
                c.lambda,
                c.n_r,
                c.l,
                c.e_num.abs()
            ));
        }
    }
    let shown: Vec<TableColumn> = computed
        .into_iter()
        .map(|c| TableColumn {
            partials: c.partials.iter().map(|&e| signed(e, abs)).collect(),
            e_num: signed(c.e_num, abs),
            ..c
        })
        .collect();
    let code = if notes.is_empty() { 0 } else { EXIT_MISMATCH };
    if code != 0 {
        notes.insert(0, format!("{} cells differ from the reference table", notes.len()));
    }
    Ok(Output {
        stdout: render::table1(format, &shown),
        notes,
        code,
    })
}

/// One level of an ordering scan, with the comparisons it takes part in.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelRow {
    pub lambda: f64,
    pub a: f64,
    pub n: u32,
    pub n_r: u32,
    pub l: u32,
    pub e_num: Option<f64>,
    pub e_const: f64,
    pub predicted: OrderingSign,
    /// Order against `(n_r - 1, l + 1)`.
    pub observed: Option<OrderingSign>,
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct ScanSummary {
    pub points: usize,
    pub order_checks: usize,
    pub ratio_checks: usize,
    pub mass_checks: usize,
    pub skipped: usize,
    pub violations: usize,
}

pub fn order(cfg: &RunConfig, lambdas: &[f64], a_values: &[f64], n_values: &[u32]) -> Result<Output, CliError> {
    if lambdas.is_empty() || a_values.is_empty() || n_values.is_empty() {
        return Err(CliError::Usage("empty scan grid".into()));
    }
    let mut grid = Vec::new();
    for &lambda in lambdas {
        for &a in a_values {
            let p = PowerLawCoulomb::new(cfg.m_c, a, lambda, cfg.q)?;
            grid.extend(n_values.iter().map(|&n| (p, n)));
        }
    }
    let scans = ordered(&grid, |&(p, n)| {
        order_scan(&p, n, cfg.hbar).map_err(|source| CliError::Oracle {
            n_r: 0,
            l: n - 1,
            source,
        })
    })?;

    let mut rows = Vec::new();
    let mut summary = ScanSummary {
        points: scans.len(),
        ..ScanSummary::default()
    };
    let mut notes = Vec::new();
    for (scan, (p, _)) in scans.iter().zip(&grid) {
        summary.order_checks += scan.order_checks;
        summary.ratio_checks += scan.ratio_checks;
        summary.mass_checks += scan.mass_checks;
        summary.skipped += scan.skipped();
        summary.violations += scan.violations.len();
        for v in &scan.violations {
            notes.push(format!(
                "violation lambda={} a={} n={}: {v}",
                scan.lambda, scan.a, scan.n
            ));
        }
        if scan.skipped() > 0 {
            notes.push(format!(
                "lambda={} a={} n={}: {} levels without a stable orbit skipped",
                scan.lambda,
                scan.a,
                scan.n,
                scan.skipped()
            ));
        }
        rows.extend(level_rows(scan, p, cfg));
    }
    let code = if summary.violations == 0 { 0 } else { EXIT_MISMATCH };
    Ok(Output {
        stdout: render::order(cfg.format, &scans, &rows, &summary),
        notes,
        code,
    })
}

fn level_rows(scan: &OrderScan, p: &PowerLawCoulomb, cfg: &RunConfig) -> Vec<LevelRow> {
    scan.levels
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let n_r = i as u32;
            let l = scan.n - n_r - 1;
            let e_const = p.balmer(&QuantumNumbers { n_r, l, hbar: cfg.hbar });
            let observed = match (i.checked_sub(1).and_then(|j| scan.levels[j]), e) {
                (Some(prev), Some(e)) if (e - prev).abs() < DEGENERATE_ENERGY_TOL => Some(OrderingSign::Degenerate),
                (Some(prev), Some(e)) => Some(OrderingSign::from_difference(e - prev)),
                _ => None,
            };
            LevelRow {
                lambda: scan.lambda,
                a: scan.a,
                n: scan.n,
                n_r,
                l,
                e_num: e.map(|e| signed(e, cfg.abs)),
                e_const: signed(e_const, cfg.abs),
                predicted: scan.predicted,
                observed,
                ratio: scan.ratios.iter().find(|(m, _)| *m == n_r).and_then(|(_, r)| *r),
            }
        })
        .collect()
}
