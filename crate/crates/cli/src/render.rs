//! Text for each output format. CSV and JSON keep full precision; the human
//! format rounds energies to five decimals.

use std::fmt::Write as _;

use pdm_core::coulomb_pdm::{OrderScan, OrderingSign};
use serde::Serialize;

use crate::commands::{LevelRow, OracleStateReport, ScanSummary, StateReport, TableColumn};
use crate::config::Format;

fn num(x: f64) -> String {
    format!("{x:.12e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

fn json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn sign_name(s: OrderingSign) -> &'static str {
    match s {
        OrderingSign::Normal => "normal",
        OrderingSign::Inverted => "inverted",
        OrderingSign::Degenerate => "degenerate",
    }
}

pub fn spectrum(format: Format, reports: &[StateReport]) -> String {
    match format {
        Format::Json => json(&reports),
        Format::Csv => csv(
            &[
                "lambda",
                "a",
                "q",
                "nr",
                "l",
                "k",
                "E_k",
                "E_partial",
                "E_num",
                "converged",
            ],
            reports.iter().flat_map(|r| {
                let e_num = opt(r.oracle.map(|o| o.energy));
                r.corrections
                    .iter()
                    .zip(&r.partials)
                    .enumerate()
                    .map(move |(k, (e, p))| {
                        vec![
                            r.lambda.to_string(),
                            r.a.to_string(),
                            r.q.to_string(),
                            r.n_r.to_string(),
                            r.l.to_string(),
                            k.to_string(),
                            num(*e),
                            num(*p),
                            e_num.clone(),
                            r.converged.to_string(),
                        ]
                    })
            }),
        ),
        Format::Human => {
            let mut out = String::new();
            for r in reports {
                let _ = writeln!(
                    out,
                    "state n_r={} l={}  (lambda={}, a={}, q={})  r0={:.5}  omega={:.5}",
                    r.n_r, r.l, r.lambda, r.a, r.q, r.r0, r.omega
                );
                let _ = writeln!(out, "  {:>2}  {:>12}  {:>12}", "k", "E_k", "E^(k)");
                for (k, (e, p)) in r.corrections.iter().zip(&r.partials).enumerate() {
                    let _ = writeln!(out, "  {k:>2}  {e:>12.5}  {p:>12.5}");
                }
                if let Some(o) = r.oracle {
                    let _ = writeln!(out, "  E_num = {:.5}  ({} nodes)", o.energy, o.nodes);
                }
                let _ = writeln!(out, "  converged: {}", if r.converged { "yes" } else { "no" });
            }
            out
        }
    }
}

pub fn oracle(format: Format, reports: &[OracleStateReport]) -> String {
    match format {
        Format::Json => json(&reports),
        Format::Csv => csv(
            &["lambda", "a", "q", "nr", "l", "E_num", "nodes", "points", "r_max"],
            reports.iter().map(|r| {
                vec![
                    r.lambda.to_string(),
                    r.a.to_string(),
                    r.q.to_string(),
                    r.n_r.to_string(),
                    r.l.to_string(),
                    num(r.oracle.energy),
                    r.oracle.nodes.to_string(),
                    r.oracle.points.to_string(),
                    num(r.oracle.r_max),
                ]
            }),
        ),
        Format::Human => {
            let mut out = String::new();
            for r in reports {
                let _ = writeln!(
                    out,
                    "n_r={} l={}  E_num = {:.5}  nodes={}  grid {} points to r={:.1}",
                    r.n_r, r.l, r.oracle.energy, r.oracle.nodes, r.oracle.points, r.oracle.r_max
                );
            }
            out
        }
    }
}

pub fn table1(format: Format, columns: &[TableColumn]) -> String {
    match format {
        Format::Json => json(&columns),
        Format::Csv => csv(
            &["lambda", "nr", "l", "k", "E_partial", "E_num"],
            columns.iter().flat_map(|c| {
                let head = |k: String, p: String, e: String| {
                    vec![c.lambda.to_string(), c.n_r.to_string(), c.l.to_string(), k, p, e]
                };
                c.partials
                    .iter()
                    .enumerate()
                    .map(move |(k, p)| head(k.to_string(), num(*p), String::new()))
                    .chain(std::iter::once(head(String::new(), String::new(), num(c.e_num))))
            }),
        ),
        Format::Human => {
            let mut out = String::new();
            let _ = write!(out, "{:>8}", "");
            for c in columns {
                let _ = write!(out, "{:>11}", format!("({},{})", c.n_r, c.l));
            }
            let _ = write!(out, "\n{:>8}", "lambda");
            for c in columns {
                let _ = write!(out, "{:>11}", c.lambda);
            }
            out.push('\n');
            let rows = columns.first().map_or(0, |c| c.partials.len());
            for k in 0..rows {
                let _ = write!(out, "{:>8}", format!("E^({k})"));
                for c in columns {
                    let _ = write!(out, "{:>11.5}", c.partials[k]);
                }
                out.push('\n');
            }
            let _ = write!(out, "{:>8}", "E_num");
            for c in columns {
                let _ = write!(out, "{:>11.5}", c.e_num);
            }
            out.push('\n');
            out
        }
    }
}

#[derive(Serialize)]
struct OrderJson<'a> {
    points: &'a [OrderScan],
    summary: &'a ScanSummary,
}

pub fn order(format: Format, scans: &[OrderScan], rows: &[LevelRow], summary: &ScanSummary) -> String {
    match format {
        Format::Json => json(&OrderJson { points: scans, summary }),
        Format::Csv => csv(
            &[
                "lambda",
                "a",
                "n",
                "nr",
                "l",
                "E_num",
                "E_const",
                "predicted",
                "observed",
                "R",
            ],
            rows.iter().map(|r| {
                vec![
                    r.lambda.to_string(),
                    r.a.to_string(),
                    r.n.to_string(),
                    r.n_r.to_string(),
                    r.l.to_string(),
                    opt(r.e_num),
                    num(r.e_const),
                    sign_name(r.predicted).to_string(),
                    r.observed.map(sign_name).unwrap_or_default().to_string(),
                    opt(r.ratio),
                ]
            }),
        ),
        Format::Human => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "{:>7} {:>6} {:>2} {:>3} {:>3} {:>12} {:>12} {:>10} {:>10} {:>9}",
                "lambda", "a", "n", "n_r", "l", "E_num", "E_const", "predicted", "observed", "R"
            );
            for r in rows {
                let _ = writeln!(
                    out,
                    "{:>7} {:>6} {:>2} {:>3} {:>3} {:>12} {:>12.5} {:>10} {:>10} {:>9}",
                    r.lambda,
                    r.a,
                    r.n,
                    r.n_r,
                    r.l,
                    r.e_num.map_or_else(|| "-".to_string(), |e| format!("{e:.5}")),
                    r.e_const,
                    sign_name(r.predicted),
                    r.observed.map_or("-", sign_name),
                    r.ratio.map_or_else(|| "-".to_string(), |x| format!("{x:.5}")),
                );
            }
            let _ = writeln!(
                out,
                "{} grid points: {} order, {} ratio, {} mass checks; {} levels skipped; {} violations",
                summary.points,
                summary.order_checks,
                summary.ratio_checks,
                summary.mass_checks,
                summary.skipped,
                summary.violations
            );
            out
        }
    }
}
