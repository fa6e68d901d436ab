//! Command-line front end: `solve`, `ml`, `symbol` and `verify`.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 accuracy warning.

mod config;
mod output;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use thiserror::Error;

pub use config::{GridSpec, OutputFormat, OutputSpec, QuadratureSpec, RunConfig};
pub use output::{write_csv, write_gnuplot, write_json};

use crate::mittag_leffler::{ml_two, MlError};
use crate::oracle::run_battery;
use crate::riesz_feller::{symbol, DiffusionTerm};
use crate::solver::{solve_with, SolverError};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_ACCURACY: u8 = 2;

/// Caps the worker pool when set to a positive integer.
pub const THREADS_ENV: &str = "FRACSOLVE_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Parser, Debug)]
#[command(
    name = "fracsolve",
    version,
    about = "Space-time fractional reaction-diffusion solver"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve the model described by a JSON run configuration
    Solve {
        config: PathBuf,
        /// Write `x N` blocks per time for external plotting instead of CSV/JSON
        #[arg(long)]
        gnuplot: bool,
        /// Overrides `output.path`
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Evaluate E_{alpha,beta}(z)
    Ml {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        /// real part of z
        #[arg(long, allow_negative_numbers = true)]
        z: f64,
        /// imaginary part of z
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        z_im: f64,
    },
    /// Evaluate the Riesz-Feller symbol |k|^alpha e^{i sign(k) theta pi/2}
    Symbol {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long, allow_negative_numbers = true)]
        k: f64,
    },
    /// Run the verification battery and print a JSON report list
    Verify {
        /// one check group; omit to run all
        selector: Option<String>,
    },
}

/// `a+bi` / `a-bi` with shortest round-trip digits.
pub fn format_complex(z: Complex64) -> String {
    if z.im.is_sign_negative() {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

/// Sizes the global rayon pool from [`THREADS_ENV`]; a pool that already
/// exists is left alone.
pub fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Solve {
            config,
            gnuplot,
            output,
        } => cmd_solve(&config, gnuplot, output, err),
        Command::Ml {
            alpha,
            beta,
            z,
            z_im,
        } => cmd_ml(alpha, beta, Complex64::new(z, z_im), out),
        Command::Symbol { alpha, theta, k } => cmd_symbol(alpha, theta, k, out),
        Command::Verify { selector } => cmd_verify(selector.as_deref(), out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

/// Solves and writes the field; `2` if the accuracy target was missed.
pub fn cmd_solve(
    config_path: &std::path::Path,
    gnuplot: bool,
    output: Option<PathBuf>,
    err: &mut dyn Write,
) -> Result<u8, CliError> {
    let config = RunConfig::load(config_path)?;
    let xs = config.grid.xs();
    let (field, code) = match solve_with(
        &config.model,
        &config.f,
        &config.g,
        &config.source,
        &xs,
        &config.grid.ts,
        &config.solve_options(),
    ) {
        Ok(field) => (field, EXIT_OK),
        Err(SolverError::AccuracyNotMet {
            field,
            estimate,
            tolerance,
        }) => {
            writeln!(
                err,
                "warning: estimated error {estimate:.3e} exceeds the target {tolerance:.3e}"
            )?;
            (*field, EXIT_ACCURACY)
        }
        Err(e) => return Err(CliError::Config(e.to_string())),
    };
    let path = output.or(config.output.path.clone());
    let mut sink: Box<dyn Write> = match &path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| {
            CliError::Usage(format!("cannot create {}: {e}", p.display()))
        })?)),
        None => Box::new(BufWriter::new(std::io::stdout().lock())),
    };
    if gnuplot {
        write_gnuplot(&field, sink.as_mut())?;
    } else {
        match config.output.format {
            OutputFormat::Csv => write_csv(&field, sink.as_mut())?,
            OutputFormat::Json => write_json(&field, sink.as_mut())?,
        }
    }
    sink.flush()?;
    Ok(code)
}

/// One line: value, absolute error estimate, regime.
pub fn cmd_ml(alpha: f64, beta: f64, z: Complex64, out: &mut dyn Write) -> Result<u8, CliError> {
    let (v, code) = match ml_two(alpha, beta, z) {
        Ok(v) => (v, EXIT_OK),
        Err(MlError::AccuracyNotMet { result, .. }) => (result, EXIT_ACCURACY),
        Err(e) => return Err(CliError::Usage(e.to_string())),
    };
    writeln!(
        out,
        "{} abs_error={:.3e} regime={:?}",
        format_complex(v.value),
        v.abs_error_estimate,
        v.regime
    )?;
    Ok(code)
}

pub fn cmd_symbol(alpha: f64, theta: f64, k: f64, out: &mut dyn Write) -> Result<u8, CliError> {
    if !k.is_finite() {
        return Err(CliError::Usage(format!("k must be finite, got {k}")));
    }
    let term = DiffusionTerm::new(1.0, alpha, theta).map_err(|e| CliError::Usage(e.to_string()))?;
    writeln!(out, "{}", format_complex(symbol(&term, k)))?;
    Ok(EXIT_OK)
}

/// JSON list of reports; `0` iff every check passed.
pub fn cmd_verify(selector: Option<&str>, out: &mut dyn Write) -> Result<u8, CliError> {
    let reports = run_battery(selector).map_err(|e| CliError::Usage(e.to_string()))?;
    serde_json::to_writer_pretty(&mut *out, &reports).map_err(std::io::Error::from)?;
    writeln!(out)?;
    Ok(if reports.iter().all(|r| r.passed) {
        EXIT_OK
    } else {
        EXIT_USAGE
    })
}
