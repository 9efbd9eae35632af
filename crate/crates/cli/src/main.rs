//! `sgcs` command-line front end.
//!
//! Exit codes: 0 pass, 1 check failure, 2 usage or parameter error,
//! 3 numerical failure.

mod commands;
mod output;
mod settings;
mod suites;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use settings::{CliError, Opts, Settings};

#[derive(Parser)]
#[command(name = "sgcs", version, about = "Generalized Susskind-Glogower coherent states")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Fock coefficients of one state as CSV
    Coeffs,
    /// Photon statistics over a grid of |α| (or n̄ with --by-nbar)
    StatsSweep,
    /// Identity-resolution diagonal by radial quadrature
    VerifyIdentity,
    /// Commutation relations of the ladder realizations
    VerifyAlgebra,
    /// Quantized matrix elements, closed form vs quadrature
    VerifyQuantization,
    /// Coefficient and operator gaps along a κ grid
    Contract,
    /// Run a named verification suite (or all)
    Verify,
}

fn run(cmd: Cmd, s: &Settings) -> Result<i32, CliError> {
    match cmd {
        Cmd::Coeffs => commands::coeffs(s),
        Cmd::StatsSweep => commands::stats_sweep(s),
        Cmd::VerifyIdentity => commands::verify_identity(s),
        Cmd::VerifyAlgebra => commands::verify_algebra(s),
        Cmd::VerifyQuantization => commands::verify_quantization(s),
        Cmd::Contract => commands::contract(s),
        Cmd::Verify => commands::verify(s),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = Settings::new(cli.opts).and_then(|s| run(cli.cmd, &s));
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                CliError::Param(_) => 2,
                CliError::Numeric(_) => 3,
            })
        }
    }
}
