//! `jratio`: closed-form constants, supremum searches, random audits and
//! lemma verification for the distance-ratio metric under disk automorphisms.
//!
//! Exit codes: 0 success, 1 a bound or lemma check failed, 2 bad arguments,
//! 3 the search finished but did not reach the closed form within `--tol`.

mod commands;
mod manifest;
mod output;
mod parse;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use jratio_core::SearchConfig;

#[derive(Debug, Parser)]
#[command(name = "jratio", version, about)]
pub struct Cli {
    /// Leave the run manifest (timestamps, timings) out of the output.
    #[arg(long, global = true)]
    pub no_manifest: bool,

    /// Write the payload to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-3)]
    pub tol: f64,
    #[arg(long, default_value_t = 48)]
    pub grid_n: usize,
    #[arg(long, default_value_t = 200)]
    pub refine_iters: usize,
    #[arg(long, default_value_t = 16)]
    pub refine_starts: usize,
}

impl SearchArgs {
    pub fn config(&self) -> SearchConfig {
        SearchConfig {
            grid_n: self.grid_n,
            refine_iters: self.refine_iters,
            refine_starts: self.refine_starts,
            seed: self.seed,
            tol: self.tol,
            ..SearchConfig::default()
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the closed-form constants for |a|.
    Constant {
        /// Möbius parameter, `RE+IMi` or a bare real.
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    /// Search for the supremum of the Lipschitz ratio and compare with C(|a|).
    Estimate {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[command(flatten)]
        search: SearchArgs,
        /// Also evaluate the ratio at the pair (a/2|a|, -a/2|a|).
        #[arg(long)]
        verify_extremal: bool,
    },
    /// Run the randomized lemma suites.
    Verify {
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Negate the logarithmic gap to check that failures are reported.
        #[arg(long, hide = true)]
        corrupt_le1: bool,
    },
    /// Estimate C(2^n, a) for n = 0..=n_max as CSV.
    Power {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        n_max: u32,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Estimate C(m, 1/(m+1)) for m = 2..=m_max as CSV.
    Q2 {
        #[arg(long)]
        m_max: u32,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Sample random pairs and count ratios above C(|a|) and above 2.
    Audit {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
