//! Command-line front end: argument and config-file handling, the four
//! subcommands, and their csv, json and human renderings.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod render;

pub use cli::{Cli, Command};
pub use commands::Output;
pub use config::{Format, RunConfig};
pub use error::CliError;

/// Runs a parsed command line on a pool of `cli.jobs` workers.
pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        pool = pool.num_threads(jobs);
    }
    let pool = pool
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {} workers: {e}", cli.jobs.unwrap_or(0))))?;
    pool.install(|| match &cli.command {
        Command::Spectrum(args) => commands::spectrum(&args.resolve()?),
        Command::Oracle(args) => commands::oracle(&args.resolve()?),
        Command::Table1(args) => commands::table1(args.format, args.abs, args.perturb),
        Command::Order(args) => commands::order(&args.resolve()?, &args.lambdas, &args.a_values, &args.n_values),
    })
}
