mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Exact verification of the quantum-differential-operator realization of
/// U_q(sl_{n+1}) on the quantum divided power algebra A_q(n).
#[derive(Parser, Debug)]
#[command(name = "qweyl", version, about)]
pub struct Cli {
    /// Number of variables of A_q(n); the quantum group is U_q(sl_{n+1}).
    #[arg(long, global = true, default_value_t = 2)]
    pub n: usize,

    /// Check identities on every monomial x^(β) with |β| ≤ DEGREE.
    #[arg(long, global = true, default_value_t = 6)]
    pub degree: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Also write the report to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads for monomial sweeps (default: QWEYL_THREADS or all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Reduced word of the longest Weyl group element, e.g. "1,2,1".
    #[arg(long, global = true)]
    pub word: Option<String>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Weyl,
    Serre,
    Gl,
    Prop32,
    Braid,
    Lemma34,
    Theorem33,
    Lemma21,
    Classical,
    All,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run a verification suite; exits 1 if any relation fails.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Apply an operator to an element of A_q(n).
    Act {
        #[arg(long)]
        op: String,
        #[arg(long)]
        on: String,
    },
    /// Rewrite an operator into the normal order x · ∂ · σ · Θ.
    Normalize {
        #[arg(long)]
        op: String,
        /// Confirm that the normal form acts like the input up to --degree.
        #[arg(long)]
        check: bool,
    },
    /// Compare the operator e_{ij} with its braid-built root vector.
    Rootvec {
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
    },
}

/// Failure modes of a command, mapped onto the process exit code.
pub enum Failure {
    /// Verification ran and found a failing identity.
    Verification,
    /// Bad flags, unparsable input, or out-of-range indices.
    Usage(String),
}

impl From<qweyl_core::Error> for Failure {
    fn from(e: qweyl_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
