//! Run parameters, read from a `key = value` file and overridden by flags.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use clap::ValueEnum;
use pdm_core::models::profiles::Yukawa;
use pdm_core::recursion::DEFAULT_ORDER;
use pdm_core::{AmbiguitySet, MassModel, PotentialModel, Problem, QuantumNumbers};
use serde::Serialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Human,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PotentialKind {
    /// `-q / r`
    Coulomb,
    /// `-q exp(-mu r) / r`
    Yukawa,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub potential: PotentialKind,
    pub q: f64,
    /// Screening rate, used by the Yukawa potential only.
    pub mu: f64,
    pub m_c: f64,
    pub a: f64,
    pub lambda: f64,
    pub alpha: f64,
    pub gamma: f64,
    pub hbar: f64,
    pub states: Vec<(u32, u32)>,
    pub order: usize,
    pub oracle: bool,
    pub format: Format,
    pub abs: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            potential: PotentialKind::Coulomb,
            q: 10.0,
            mu: 0.0,
            m_c: 0.5,
            a: 0.1,
            lambda: 2.0,
            alpha: 0.0,
            gamma: 0.0,
            hbar: 1.0,
            states: vec![(0, 0)],
            order: DEFAULT_ORDER,
            oracle: false,
            format: Format::Human,
            abs: false,
        }
    }
}

pub const KEYS: [&str; 14] = [
    "potential",
    "q",
    "mu",
    "m_c",
    "a",
    "lambda",
    "alpha",
    "gamma",
    "hbar",
    "states",
    "order",
    "oracle",
    "format",
    "abs",
];

impl RunConfig {
    /// Parses `key = value` lines on top of the defaults. Blank lines and
    /// lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut cfg = Self::default();
        for (no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("line {}: expected key = value", no + 1)))?;
            cfg.set(key.trim(), value.trim())
                .map_err(|e| CliError::Usage(format!("line {}: {e}", no + 1)))?;
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        match key {
            "potential" => self.potential = PotentialKind::from_str(value, true)?,
            "q" => self.q = number(value)?,
            "mu" => self.mu = number(value)?,
            "m_c" => self.m_c = number(value)?,
            "a" => self.a = number(value)?,
            "lambda" => self.lambda = number(value)?,
            "alpha" => self.alpha = number(value)?,
            "gamma" => self.gamma = number(value)?,
            "hbar" => self.hbar = number(value)?,
            "states" => {
                self.states = value
                    .split(';')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(parse_state)
                    .collect::<Result<_, _>>()?
            }
            "order" => self.order = value.parse().map_err(|_| format!("bad order {value:?}"))?,
            "oracle" => self.oracle = flag(value)?,
            "format" => self.format = Format::from_str(value, true)?,
            "abs" => self.abs = flag(value)?,
            other => return Err(format!("unknown key {other:?}")),
        }
        Ok(())
    }

    /// The config as a file that [`RunConfig::parse`] reads back unchanged.
    pub fn to_text(&self) -> String {
        let states: Vec<String> = self.states.iter().map(|(n_r, l)| format!("{n_r},{l}")).collect();
        let mut out = String::new();
        for key in KEYS {
            let value = match key {
                "potential" => variant(&self.potential),
                "q" => self.q.to_string(),
                "mu" => self.mu.to_string(),
                "m_c" => self.m_c.to_string(),
                "a" => self.a.to_string(),
                "lambda" => self.lambda.to_string(),
                "alpha" => self.alpha.to_string(),
                "gamma" => self.gamma.to_string(),
                "hbar" => self.hbar.to_string(),
                "states" => states.join(";"),
                "order" => self.order.to_string(),
                "oracle" => self.oracle.to_string(),
                "format" => variant(&self.format),
                "abs" => self.abs.to_string(),
                _ => unreachable!(),
            };
            let _ = writeln!(out, "{key} = {value}");
        }
        out
    }

    pub fn problem(&self) -> Result<Problem, CliError> {
        let mass = MassModel::power_law(self.m_c, self.a, self.lambda)?;
        let potential = match self.potential {
            PotentialKind::Coulomb => PotentialModel::coulomb(self.q)?,
            PotentialKind::Yukawa => {
                if !(self.q > 0.0) || !(self.mu >= 0.0) {
                    return Err(CliError::Usage(format!(
                        "Yukawa needs q > 0 and mu >= 0, got q = {}, mu = {}",
                        self.q, self.mu
                    )));
                }
                PotentialModel::custom(Arc::new(Yukawa { q: self.q, mu: self.mu }))
            }
        };
        let amb = AmbiguitySet::from_alpha_gamma(self.alpha, self.gamma)?;
        Ok(Problem::new(mass, potential).with_ambiguity(amb))
    }

    pub fn quantum_numbers(&self) -> Result<Vec<QuantumNumbers>, CliError> {
        if self.states.is_empty() {
            return Err(CliError::Usage("no states requested".into()));
        }
        self.states
            .iter()
            .map(|&(n_r, l)| QuantumNumbers::with_hbar(n_r, l, self.hbar).map_err(CliError::from))
            .collect()
    }
}

fn number(value: &str) -> Result<f64, String> {
    let x: f64 = value.parse().map_err(|_| format!("bad number {value:?}"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("number {value:?} is not finite"))
    }
}

fn flag(value: &str) -> Result<bool, String> {
    match value {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(format!("bad boolean {value:?}")),
    }
}

fn variant(v: &impl ValueEnum) -> String {
    v.to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string()
}

/// `n_r,l`
pub fn parse_state(s: &str) -> Result<(u32, u32), String> {
    let (n_r, l) = s.split_once(',').ok_or_else(|| format!("state {s:?} is not n_r,l"))?;
    let n_r = n_r.trim().parse().map_err(|_| format!("bad n_r in {s:?}"))?;
    let l = l.trim().parse().map_err(|_| format!("bad l in {s:?}"))?;
    Ok((n_r, l))
}
