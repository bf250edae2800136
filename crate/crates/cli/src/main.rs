//! `dirac2d`: identity checks, spectra, pairings and K0 tables.
//!
//! Exit status is 0 when every row passes, 1 when some row fails and 2 for
//! usage or validation errors.

mod commands;
mod literal;
mod report;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use dirac2d::quad::Profile;
use dirac2d::spectrum::Coupling;
use dirac2d::verify::{run_suite, Suite};

use commands::{PairRequest, UsageError};
use literal::{parse_log_range, parse_point, parse_range, parse_real};
use report::{emit, Format};

#[derive(Parser, Debug)]
#[command(name = "dirac2d", version)]
#[command(about = "Distributional calculus for the 2D Schrödinger operator with a point interaction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    Identities,
    Rewrite,
    All,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MollifierArg {
    Gaussian,
    Bump,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a check suite against the test-function battery
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Bound-state energies over a range of length scales
    Spectrum {
        #[arg(long, value_parser = parse_real)]
        hbar: f64,
        #[arg(long, value_parser = parse_real)]
        mass: f64,
        /// Coupling; accepts literals such as `4pi` or `-pi/2`
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        alpha: f64,
        /// Length scales as `start:stop:count`
        #[arg(long = "L", allow_hyphen_values = true)]
        length_scales: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Rewrite an expression and pair it with a bump test function
    Pair {
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        #[arg(long, value_parser = parse_real, default_value = "1")]
        phi_radius: f64,
        #[arg(long, value_parser = parse_real, default_value = "1", allow_hyphen_values = true)]
        phi_amplitude: f64,
        /// Center as `x,y`
        #[arg(long, value_parser = parse_point, default_value = "0,0", allow_hyphen_values = true)]
        phi_center: [f64; 2],
        /// Length scale for K0 and psi products with delta
        #[arg(long = "L", value_parser = parse_real, allow_hyphen_values = true)]
        length_scale: Option<f64>,
        #[arg(long, value_enum, default_value = "gaussian")]
        mollifier: MollifierArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Tabulate K0 and its logarithmic form
    K0 {
        /// Individual arguments
        #[arg(long = "x", value_parser = parse_real)]
        xs: Vec<f64>,
        /// Log-spaced grid `start:stop:count`
        #[arg(long)]
        grid: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn run(cli: Cli, out: &mut impl Write) -> Result<bool, UsageError> {
    let echo: Vec<String> = std::env::args().skip(1).collect();
    let command = format!("dirac2d {}", echo.join(" "));
    let summary = match cli.command {
        Command::Verify { suite, format } => {
            let suite = match suite {
                SuiteArg::Identities => Suite::Identities,
                SuiteArg::Rewrite => Suite::Rewrite,
                SuiteArg::All => Suite::All,
            };
            let report = run_suite(suite);
            emit(out, format, &command, &report.rows)?
        }
        Command::Spectrum {
            hbar,
            mass,
            alpha,
            length_scales,
            format,
        } => {
            let coupling = Coupling::new(hbar, mass, alpha)?;
            let lengths = parse_range(&length_scales).map_err(UsageError)?;
            let rows = commands::spectrum(&coupling, &lengths)?;
            emit(out, format, &command, &rows)?
        }
        Command::Pair {
            expr,
            phi_radius,
            phi_amplitude,
            phi_center,
            length_scale,
            mollifier,
            format,
        } => {
            let req = PairRequest {
                expr: &expr,
                amplitude: phi_amplitude,
                radius: phi_radius,
                center: phi_center,
                length_scale,
                profile: match mollifier {
                    MollifierArg::Gaussian => Profile::Gaussian,
                    MollifierArg::Bump => Profile::Bump,
                },
            };
            let rows = commands::pair(&req)?;
            emit(out, format, &command, &rows)?
        }
        Command::K0 { mut xs, grid, format } => {
            if let Some(g) = grid {
                xs.extend(parse_log_range(&g).map_err(UsageError)?);
            }
            if xs.is_empty() {
                return Err(UsageError("give at least one --x or a --grid".into()));
            }
            let rows = commands::k0_table(&xs)?;
            emit(out, format, &command, &rows)?
        }
    };
    Ok(summary.failed == 0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(UsageError(msg)) => {
            let _ = out.flush();
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
