use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{parse_state, Format, PotentialKind, RunConfig};
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "pdm",
    version,
    about = "Bound states of a radial Schroedinger equation with position-dependent mass"
)]
pub struct Cli {
    /// Worker threads for state lists and scans (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// hbar-expansion corrections and partial sums for each state.
    Spectrum(ConfigArgs),
    /// Reproduce the reference table for q = 10, a = 0.1, m_c = 0.5, hbar = 1.
    Table1(Table1Args),
    /// Check the level-ordering inequalities over a parameter grid.
    Order(OrderArgs),
    /// Numerov eigenvalues only.
    Oracle(ConfigArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct ConfigArgs {
    /// `key = value` file; flags given on the command line take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub potential: Option<PotentialKind>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<f64>,
    /// Yukawa screening rate.
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long = "m-c")]
    pub m_c: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub hbar: Option<f64>,
    /// `n_r,l`; repeat for several states.
    #[arg(long = "state", value_parser = parse_state)]
    pub states: Vec<(u32, u32)>,
    /// Highest correction order K.
    #[arg(long)]
    pub order: Option<usize>,
    /// Also solve each state with the Numerov integrator.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Print absolute values of partial sums and Numerov energies.
    #[arg(long)]
    pub abs: bool,
}

impl ConfigArgs {
    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        macro_rules! take {
            ($($field:ident),*) => {
                $(if let Some(v) = self.$field {
                    cfg.$field = v;
                })*
            };
        }
        take!(potential, q, mu, m_c, a, lambda, alpha, gamma, hbar, order, format);
        if !self.states.is_empty() {
            cfg.states = self.states.clone();
        }
        cfg.oracle |= self.oracle;
        cfg.abs |= self.abs;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Args)]
pub struct Table1Args {
    #[arg(long, value_enum, default_value = "human")]
    pub format: Format,
    #[arg(long)]
    pub abs: bool,
    /// Shift every computed energy before comparing (negative control).
    #[arg(long, hide = true, allow_hyphen_values = true)]
    pub perturb: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct OrderArgs {
    /// Reads `q`, `m_c`, `hbar`, `format` and `abs`; other keys are ignored.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        default_value = "-3,-2,-1,1,2,3"
    )]
    pub lambdas: Vec<f64>,
    #[arg(long = "a-values", value_delimiter = ',', default_value = "0.05,0.1")]
    pub a_values: Vec<f64>,
    /// Principal numbers to scan.
    #[arg(long = "n-values", value_delimiter = ',', default_value = "3")]
    pub n_values: Vec<u32>,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long = "m-c")]
    pub m_c: Option<f64>,
    #[arg(long)]
    pub hbar: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub abs: bool,
}

impl OrderArgs {
    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        if let Some(q) = self.q {
            cfg.q = q;
        }
        if let Some(m_c) = self.m_c {
            cfg.m_c = m_c;
        }
        if let Some(hbar) = self.hbar {
            cfg.hbar = hbar;
        }
        if let Some(format) = self.format {
            cfg.format = format;
        }
        cfg.abs |= self.abs;
        Ok(cfg)
    }
}
