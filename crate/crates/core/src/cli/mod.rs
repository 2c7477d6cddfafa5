//! Command-line driver.
//!
//! Every command produces a JSON report (full fidelity) and a tab-separated
//! `key<TAB>value` summary. Numbers in both are rounded to 9 significant
//! digits. With `--out DIR` the two are written to `DIR/<command>.json` and
//! `DIR/<command>.tsv`; the summary is always returned for printing.
//!
//! Exit status: 0 ok, 2 parse/schema, 3 invariant, 4 cap, 5 solver indeterminate.

mod bundled;
mod commands;

pub use bundled::{bundled_examples, example_one, example_two};
pub use commands::run;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::{Error, Result};

#[derive(Debug, Clone, Parser)]
#[command(name = "avwc", version, about = "Arbitrarily varying classical-quantum wiretap channel toolkit")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Directory for the JSON report and TSV summary.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepArg {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Decide symmetrizability of the legal family.
    CheckSym {
        file: PathBuf,
        #[arg(long, default_value_t = crate::sym::DEFAULT_TOL)]
        tol: f64,
        /// Write the witness document here.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Evaluate the randomness-assisted secrecy lower bound.
    Bound {
        file: PathBuf,
        #[arg(long, default_value_t = 64)]
        grid: usize,
        #[arg(long, default_value_t = 1)]
        leakage_order: usize,
        #[arg(long, default_value_t = 2.0)]
        base: f64,
    },
    /// Worst-case error and leakage of a code over a jammer sweep.
    Simulate {
        channel: PathBuf,
        #[arg(long)]
        code: PathBuf,
        #[arg(long, value_enum, default_value_t = SweepArg::Exhaustive)]
        sweep: SweepArg,
        #[arg(long, default_value_t = 4096)]
        cap: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Dichotomy reports for two channels and their product.
    Superactivate {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(long, default_value_t = 64)]
        grid: usize,
    },
    /// Recompute the bundled examples end to end.
    Reproduce,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::CheckSym { .. } => "check-sym",
            Command::Bound { .. } => "bound",
            Command::Simulate { .. } => "simulate",
            Command::Superactivate { .. } => "superactivate",
            Command::Reproduce => "reproduce",
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidArgument(m.to_string()));
        match &self.command {
            Command::CheckSym { tol, .. } if tol.is_nan() || *tol <= 0.0 => bad("--tol must be positive"),
            Command::Bound { grid, leakage_order, base, .. } => {
                if *grid == 0 || *leakage_order == 0 {
                    bad("--grid and --leakage-order must be positive")
                } else if base.is_nan() || *base <= 1.0 {
                    bad("--base must exceed 1")
                } else {
                    Ok(())
                }
            }
            Command::Simulate { sweep, cap, seed, .. } => {
                if *cap == 0 {
                    bad("--cap must be positive")
                } else if *sweep == SweepArg::Sampled && seed.is_none() {
                    bad("--seed is required with --sweep sampled")
                } else {
                    Ok(())
                }
            }
            Command::Superactivate { grid, .. } if *grid == 0 => bad("--grid must be positive"),
            _ => Ok(()),
        }
    }
}

/// Report text produced by [`run`].
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub report: String,
    pub summary: String,
}

/// Round to 9 significant digits.
pub fn sig9(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.8e}").parse().expect("formatted float parses")
}

/// `x` rounded to 9 significant digits, printed without exponent.
pub fn fmt9(x: f64) -> String {
    let r = sig9(x);
    if r == 0.0 {
        "0".to_string()
    } else {
        format!("{r}")
    }
}

/// Parse arguments, run, print the summary; returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&config) {
        Ok(out) => {
            print!("{}", out.summary);
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
