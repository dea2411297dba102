//! `mhermite`: multiple Hermite polynomials, simultaneous Gaussian quadrature
//! and the asymptotics of the symmetric triple from the command line.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::Format;

#[derive(Debug, Parser)]
#[command(name = "mhermite", version, about)]
struct Cli {
    /// Working precision in decimal digits (at least 30).
    #[arg(long, global = true, env = "MHERMITE_PRECISION", default_value_t = mhermite::numerics::DEFAULT_DIGITS)]
    precision: usize,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

/// The symmetric triple `(-c, 0, c)`, given by `c` or by `chat = c / sqrt(n)`.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Shift {
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    chat: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Coefficients of H_n by the recurrence and by the explicit formula.
    Poly {
        /// Multi-index, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        /// Shifts c_j, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        c: Vec<String>,
    },
    /// Zeros of H_{n,n,n} and how they fall into the localization intervals.
    Zeros {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        shift: Shift,
    },
    /// Nodes and weights of the simultaneous quadrature rule.
    Rule {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        shift: Shift,
        /// Use the raw weights exp(-x^2 + c_j x) instead of unit-mass densities.
        #[arg(long)]
        raw: bool,
    },
    /// Limiting zero density v and the measures nu_1, nu_2, nu_3.
    Density {
        #[arg(long, allow_hyphen_values = true)]
        chat: String,
        #[arg(long, default_value_t = 201)]
        samples: usize,
    },
    /// The critical shift c* between the one- and three-interval phases.
    Transition,
    /// Logarithmic potentials, discrete potentials and the variational combinations.
    Potentials {
        #[arg(long, allow_hyphen_values = true)]
        chat: String,
        #[arg(long)]
        n: usize,
        /// Grid points.
        #[arg(long, default_value_t = 201)]
        samples: usize,
    },
    /// Run the acceptance suites and print a JSON report.
    Check {
        #[arg(long, value_enum, default_value_t = commands::SuiteArg::All)]
        suite: commands::SuiteArg,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = mhermite::numerics::set_precision(cli.precision) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match commands::run(&cli.command, cli.format) {
        Ok((bytes, status)) => match output::emit(&bytes, cli.out.as_deref()) {
            Ok(()) => ExitCode::from(status),
            Err(e) => {
                eprintln!("error: cannot write output: {e}");
                ExitCode::from(1)
            }
        },
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
