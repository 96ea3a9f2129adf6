//! `aybe`: build, check, compare and transform associative Yang-Baxter
//! solutions from the command line.
//!
//! Exit codes: 0 success, 1 verification failed, 2 usage or parse error,
//! 3 degenerate form or singular matrix.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::report::{write_file, CliError};

#[derive(Debug, Parser)]
#[command(name = "aybe", version, about = "Exact associative Yang-Baxter solutions from anti-Frobenius algebras")]
struct Cli {
    #[command(flatten)]
    output: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Params {
    /// Dimension N.
    #[arg(long)]
    pub n: usize,
    /// Block size M, a proper divisor of N.
    #[arg(long, default_value_t = 1)]
    pub m: usize,
    /// Comma-separated rationals, e.g. 2,1,5/3,0.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build r from the algebra A_{N,M} by inverting the Gram matrix.
    Construct {
        #[command(flatten)]
        params: Params,
        /// Where to write the tensor.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check skew-symmetry and the component Yang-Baxter equation.
    Verify {
        tensor: PathBuf,
    },
    /// Evaluate an explicit tensor family, optionally comparing to a file.
    ClosedForm {
        #[command(flatten)]
        params: Params,
        /// m1, block or distinct.
        #[arg(long)]
        variant: String,
        #[arg(long)]
        compare: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the cyclic identity (x,yz)+(y,zx)+(z,xy)=0 on all basis triples.
    Cocycle {
        #[command(flatten)]
        params: Params,
    },
    /// Derive the quadratic Poisson bracket of a tensor.
    Bracket {
        tensor: PathBuf,
        /// Size of the matrix generators; 1 gives the scalar bracket.
        #[arg(long, default_value_t = 1)]
        m_size: usize,
        #[arg(long)]
        check_jacobi: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the printed N = 2M scalar bracket with the one derived from
    /// the distinct-parameter tensor.
    #[command(name = "bracket-2m")]
    Bracket2m {
        /// Dimension N (even); M = N / 2.
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Change basis by a matrix, or take the transpose dual.
    Transform {
        tensor: PathBuf,
        /// JSON matrix: list of rows of rational strings or integers.
        #[arg(long, conflicts_with_all = ["transpose_dual", "random_g"])]
        g: Option<PathBuf>,
        #[arg(long, conflicts_with = "random_g")]
        transpose_dual: bool,
        /// Draw an invertible g with bounded rational entries.
        #[arg(long)]
        random_g: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let start = Instant::now();
    let report_path = cli.output.report;
    let mut report = match cli.command {
        Command::Construct { params, out } => commands::construct(&params, out.as_deref())?,
        Command::Verify { tensor } => commands::verify(&tensor)?,
        Command::ClosedForm {
            params,
            variant,
            compare,
            out,
        } => commands::closed_form(&params, &variant, compare.as_deref(), out.as_deref())?,
        Command::Cocycle { params } => commands::cocycle(&params)?,
        Command::Bracket {
            tensor,
            m_size,
            check_jacobi,
            out,
        } => commands::bracket(&tensor, m_size, check_jacobi, out.as_deref())?,
        Command::Bracket2m { n, lambda } => commands::bracket_2m(n, &lambda)?,
        Command::Transform {
            tensor,
            g,
            transpose_dual,
            random_g,
            seed,
            out,
        } => {
            let how = match (g, transpose_dual, random_g) {
                (Some(path), false, false) => commands::Transform::Matrix(path),
                (None, true, false) => commands::Transform::Dual,
                (None, false, true) => commands::Transform::Random(seed),
                _ => return Err(CliError::usage("give exactly one of --g, --transpose-dual, --random-g")),
            };
            commands::transform(&tensor, how, out.as_deref())?
        }
    };
    report.timing_ms = start.elapsed().as_millis();
    let text = report.to_json_string();
    match &report_path {
        Some(path) => write_file(path, &text)?,
        None => print!("{text}"),
    }
    Ok(report.verdict.exit_code())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
