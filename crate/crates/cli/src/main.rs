//! `biot`: single runs, convergence studies and stabilization sweeps for the
//! dynamic Biot solver with permeability memory.

mod config;
mod error;

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use biot_core::harness::{
    convergence_study, run, stabilization_sweep, write_convergence_csv, write_sweep_csv, Case,
    RunConfig, SchemeKind, TauRule,
};
use biot_core::mms::Example;
use biot_core::schemes::default_stabilization;
use clap::{Parser, Subcommand, ValueEnum};

use config::Settings;
use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "biot", version, about = "Dynamic Biot solver with permeability memory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TauRuleArg {
    Fixed,
    Halving,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// One simulation; writes summary.csv and optional VTK snapshots
    Run {
        #[command(flatten)]
        settings: Settings,
    },
    /// Errors and observed orders over a list of meshes
    Convergence {
        #[command(flatten)]
        settings: Settings,
        /// Subdivisions per mesh [default: 4,8,16,32 for example 1, 16,32,64 otherwise]
        #[arg(long, value_delimiter = ',')]
        meshes: Option<Vec<usize>>,
        /// Time step rule [default: fixed for example 1, halving otherwise]
        #[arg(long, value_enum)]
        tau_rule: Option<TauRuleArg>,
    },
    /// Average fixed-stress iterations for several stabilization values
    Sweep {
        #[command(flatten)]
        settings: Settings,
        /// Absolute values of L
        #[arg(long, value_delimiter = ',', num_args = 0.., conflicts_with = "factors")]
        values: Option<Vec<f64>>,
        /// Multiples of the classical value [default: 0.25,0.5,1,2,4]
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        factors: Option<Vec<f64>>,
    },
}

fn is_example_one(config: &RunConfig) -> bool {
    config.case == Case::Manufactured(Example::One)
}

fn emit(name: &str, config: &RunConfig, bytes: &[u8]) -> Result<(), CliError> {
    std::io::stdout().write_all(bytes)?;
    if let Some(dir) = &config.output_dir {
        fs::create_dir_all(dir)?;
        fs::write(dir.join(name), bytes)?;
    }
    Ok(())
}

fn execute(command: Command) -> Result<(), CliError> {
    match command {
        Command::Run { settings } => {
            let config = settings.resolve()?.to_run_config()?;
            let outcome = run(&config)?;
            let row = &outcome.row;
            println!("levels solved: {}", outcome.trajectory.reports.len());
            println!("avg iterations: {:.4}", row.avg_iterations);
            println!("max iterations: {}", row.max_iterations);
            println!("err_p_L2: {:.6e}", row.err_p);
            println!("err_u_L2: {:.6e}", row.err_u);
            Ok(())
        }
        Command::Convergence {
            settings,
            meshes,
            tau_rule,
        } => {
            let config = settings.resolve()?.to_run_config()?;
            let first = is_example_one(&config);
            let meshes = meshes.unwrap_or_else(|| {
                if first {
                    vec![4, 8, 16, 32]
                } else {
                    vec![16, 32, 64]
                }
            });
            let rule = match tau_rule {
                Some(TauRuleArg::Fixed) => TauRule::Fixed,
                Some(TauRuleArg::Halving) => TauRule::Halving,
                None if first => TauRule::Fixed,
                None => TauRule::Halving,
            };
            let study = convergence_study(&config, &meshes, rule)?;
            let mut bytes = Vec::new();
            write_convergence_csv(&mut bytes, &study.rows)?;
            emit("convergence.csv", &config, &bytes)?;
            match study.failure {
                Some(e) => Err(e.into()),
                None => Ok(()),
            }
        }
        Command::Sweep {
            settings,
            values,
            factors,
        } => {
            let mut config = settings.resolve()?.to_run_config()?;
            config.scheme = SchemeKind::FixedStress;
            let values = match values {
                Some(v) => v,
                None => {
                    let lc = default_stabilization(&config.params);
                    factors
                        .unwrap_or_else(|| vec![0.25, 0.5, 1.0, 2.0, 4.0])
                        .iter()
                        .map(|f| f * lc)
                        .collect()
                }
            };
            let rows = stabilization_sweep(&config, &values)?;
            let mut bytes = Vec::new();
            write_sweep_csv(&mut bytes, &rows)?;
            emit("sweep.csv", &config, &bytes)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
