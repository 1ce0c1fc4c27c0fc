use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qcausal::run::{run_command, sweep_command, Scale, SweepSpec};

#[derive(Parser)]
#[command(
    name = "qcausal",
    version,
    about = "Interference-based bounds on classical causality"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyse one scenario and write the report (stdout by default) and pattern.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        pattern: Option<PathBuf>,
    },
    /// Repeat the analysis over a range of one parameter.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        param: String,
        #[arg(long, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, allow_negative_numbers = true)]
        to: f64,
        #[arg(long)]
        steps: usize,
        /// Geometric spacing instead of linear.
        #[arg(long)]
        log: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the built-in invariant checks.
    Verify,
}

fn main() -> ExitCode {
    let code = match Cli::parse().command {
        Command::Run {
            config,
            report,
            pattern,
        } => run_command(&config, report.as_deref(), pattern.as_deref()),
        Command::Sweep {
            config,
            param,
            from,
            to,
            steps,
            log,
            out,
        } => {
            let spec = SweepSpec {
                param,
                from,
                to,
                steps,
                scale: if log { Scale::Log } else { Scale::Linear },
            };
            sweep_command(&config, &spec, &out)
        }
        Command::Verify => {
            let failures = qcausal::verify::run_checks(std::io::stdout());
            i32::from(failures > 0)
        }
    };
    ExitCode::from(code as u8)
}
