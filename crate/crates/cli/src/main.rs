//! `pfcs`: verification suites, parameter sweeps and trajectory exports for
//! the damped two-level system and its pseudo-fermionic coherent states.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pseudofermion::SystemParams;

use crate::commands::{CliError, Outcome};

#[derive(Debug, Parser)]
#[command(name = "pfcs", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every identity check at one parameter point and emit a JSON report.
    Verify(Common),
    /// Run the verification suite over a grid in (delta/|omega|, arg omega) and emit CSV.
    Sweep {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Evolve the coherent states and emit factor, parameter phase and amplitudes as CSV.
    Evolve {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        time: TimeArgs,
    },
    /// Compare RK4 integration of the amplitude equation with the closed forms.
    OdeCheck {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        time: TimeArgs,
    },
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    #[arg(long, default_value_t = 1.6, allow_negative_numbers = true)]
    pub gamma_a: f64,
    #[arg(long, default_value_t = 0.4, allow_negative_numbers = true)]
    pub gamma_b: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub omega_re: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub omega_im: f64,
    /// Tolerance for numeric identities. Defaults to 1e-12, or 1e-6 for ode-check.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Write the artifact here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Emit JSON instead of CSV (sweep and evolve).
    #[arg(long)]
    pub json: bool,
    /// Use this string as the report timestamp.
    #[arg(long)]
    pub fixed_timestamp: Option<String>,
}

impl Common {
    pub fn params(&self) -> SystemParams {
        SystemParams {
            gamma_a: self.gamma_a,
            gamma_b: self.gamma_b,
            omega_re: self.omega_re,
            omega_im: self.omega_im,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = 10)]
    pub grid_delta_steps: usize,
    #[arg(long, default_value_t = 8)]
    pub grid_arg_steps: usize,
    /// Upper end of the delta/|omega| axis.
    #[arg(long, default_value_t = 0.9)]
    pub grid_delta_max: f64,
}

#[derive(Debug, Clone, Args)]
pub struct TimeArgs {
    #[arg(long, default_value_t = 10.0)]
    pub t_max: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    /// Emit every n-th time step.
    #[arg(long, default_value_t = 100)]
    pub stride: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify(common) => commands::verify(common),
        Command::Sweep { common, grid } => commands::sweep(common, grid),
        Command::Evolve { common, time } => commands::evolve(common, time),
        Command::OdeCheck { common, time } => commands::ode_check(common, time),
    };
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("pfcs: {e}");
            ExitCode::from(match e {
                CliError::Io { .. } => 3,
                _ => 2,
            })
        }
    }
}
