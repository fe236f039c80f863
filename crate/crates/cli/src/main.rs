//! `parity-ns`: command-line drivers for the parity-symmetry toolkit.
//!
//! Exit status: 0 when every verification check passes, 1 when a check
//! fails or the data leave the regime a driver can handle, 2 on usage or
//! configuration errors.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use parity_ns::Error;

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments, configuration or input files.
    Usage(String),
    /// The computation could not be carried out on these data.
    Data(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidGridSize(_)
            | Error::SizeMismatch { .. }
            | Error::Inadmissible(_)
            | Error::Config(_)
            | Error::Format(_)
            | Error::Io(_)
            | Error::Json(_) => CliError::Usage(e.to_string()),
            Error::DegenerateDraw { .. }
            | Error::NotSolenoidal { .. }
            | Error::InsufficientCoverage { .. }
            | Error::NoContraction { .. }
            | Error::NotCompatible { .. } => CliError::Data(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

#[derive(Parser)]
#[command(name = "parity-ns", version, about = "Parity symmetries of Navier-Stokes fields on the periodic box")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Mode {
    Real,
    Complex,
}

#[derive(Subcommand)]
enum Command {
    /// Count the kinds of symmetric solenoidal fields.
    Enumerate {
        #[arg(long, value_enum)]
        mode: Mode,
        /// Report path (standard output if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Split a solenoidal field into eight mutually matched symmetric parts.
    Decompose {
        #[arg(long = "in")]
        input: PathBuf,
        /// Imaginary shift, as three bits such as 010.
        #[arg(long, default_value = "000")]
        beta: String,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Picard iteration of the mild formulation from a field file.
    Solve {
        #[arg(long = "in")]
        input: PathBuf,
        /// Solver configuration (JSON); defaults are used if omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Check which kinds keep their symmetry under the bilinear term.
    Rigidity {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long, default_value_t = 16)]
        n: usize,
        /// Number of witness seeds (0, 1, ...).
        #[arg(long, default_value_t = 3)]
        seeds: u64,
        /// Time at which B(u,u) is evaluated.
        #[arg(long, default_value_t = 0.1)]
        t: f64,
        #[arg(long, default_value_t = 9)]
        quad_points: usize,
        /// Relative size of B below which a kind counts as a Beltrami escape.
        #[arg(long, default_value_t = 1e-8)]
        beltrami_tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Residual of the planar Beltrami surrogate along the heat flow.
    Beltrami {
        #[arg(long, default_value_t = 32)]
        n: usize,
        #[arg(long, default_value_t = 0.1)]
        t: f64,
        /// Lattice circle k1^2 + k2^2 of the stream function.
        #[arg(long, default_value_t = 5)]
        shell: u32,
        /// Random shell coefficients from this seed (fixed coefficients if omitted).
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1.0)]
        amplitude: f64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The unmatched pair whose projected product is not symmetric.
    Example41 {
        #[arg(long, default_value_t = 32)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extend half-space data across x3 = 0 and solve.
    Halfspace {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_parser = ["zero", "antisym", "sym"])]
        extend: String,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive checks of the label algebra and the kind counts.
    Selftest {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a random field of a given kind (or the Beltrami surrogate) to disk.
    Witness {
        /// A kind such as "(100, 010, 001)", or "beltrami".
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 16)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// RMS of the written field.
        #[arg(long, default_value_t = 1.0)]
        amplitude: f64,
        /// Write only the lower half x3 in (0, pi).
        #[arg(long)]
        half: bool,
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Enumerate { mode, out } => commands::enumerate(mode, out.as_ref()),
        Command::Decompose { input, beta, out_dir } => commands::decompose(&input, &beta, &out_dir),
        Command::Solve { input, config, out_dir } => commands::solve(&input, config.as_ref(), &out_dir),
        Command::Rigidity { mode, n, seeds, t, quad_points, beltrami_tol, out } => {
            commands::rigidity(mode, n, seeds, t, quad_points, beltrami_tol, out.as_ref())
        }
        Command::Beltrami { n, t, shell, seed, amplitude, tol, out } => {
            commands::beltrami(n, t, shell, seed, amplitude, tol, out.as_ref())
        }
        Command::Example41 { n, seed, out } => commands::example41(n, seed, out.as_ref()),
        Command::Halfspace { input, extend, config, out } => {
            commands::halfspace(&input, &extend, config.as_ref(), out.as_ref())
        }
        Command::Selftest { out } => commands::selftest(out.as_ref()),
        Command::Witness { kind, n, seed, amplitude, half, out } => {
            commands::witness(&kind, n, seed, amplitude, half, &out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
