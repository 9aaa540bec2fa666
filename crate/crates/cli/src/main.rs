use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ur_cli::demo::{run_demo, DemoCase, DemoParams};
use ur_cli::report::{evaluate_problem, format_eval};
use ur_cli::wire::write_json;
use ur_cli::{load_problem, parse_relations, parse_state_kinds, run_campaign, CampaignConfig, CliError};

#[derive(Parser)]
#[command(name = "ur", about = "Evaluate and fuzz matrix uncertainty relations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate relations on a problem file.
    Eval {
        #[arg(long)]
        input: PathBuf,
        /// `all` or comma-separated relation names.
        #[arg(long, default_value = "all")]
        relations: String,
        #[arg(long, default_value_t = ur_core::relations::DEFAULT_TOL)]
        tol: f64,
        /// Write the JSON report here.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a randomized campaign. Set UR_THREADS to fix the worker count.
    Fuzz {
        #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,6")]
        dims: Vec<usize>,
        #[arg(long = "num-obs", value_delimiter = ',', default_value = "2,3,4,5")]
        num_obs: Vec<usize>,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `all` or comma-separated: pure, mixed-full-rank, mixed-random-rank.
        #[arg(long, default_value = "all")]
        state: String,
        #[arg(long, default_value = "all")]
        relations: String,
        #[arg(long, default_value_t = ur_core::relations::DEFAULT_TOL)]
        tol: f64,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Write per-trial tightness ratios as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Print a worked example.
    Demo {
        /// gram-example, pauli-equalities, square-order-counterexample or pinching-identity.
        #[arg(long)]
        case: String,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long, default_value_t = 64)]
        grid: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 2)]
        dim: usize,
    },
    /// Print the version.
    Version,
}

enum Outcome {
    Clean,
    Violations,
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Eval {
            input,
            relations,
            tol,
            output,
        } => {
            let relations = parse_relations(&relations)?;
            let problem = load_problem(&input)?;
            let report = evaluate_problem(&problem, &relations, tol)?;
            print!("{}", format_eval(&report));
            if let Some(path) = output {
                write_json(&path, &report)?;
            }
            Ok(if report.violations() == 0 {
                Outcome::Clean
            } else {
                Outcome::Violations
            })
        }
        Command::Fuzz {
            dims,
            num_obs,
            trials,
            seed,
            state,
            relations,
            tol,
            output,
            csv,
        } => {
            let config = CampaignConfig {
                dims,
                num_observables: num_obs,
                trials,
                seed,
                relations: parse_relations(&relations)?,
                tol,
                state_kinds: parse_state_kinds(&state)?,
            };
            let result = run_campaign(&config)?;
            match output {
                Some(path) => {
                    std::fs::write(&path, result.to_json()).map_err(|e| CliError::Io { path, source: e })?;
                    print!("{}", result.summary());
                }
                None => print!("{}", result.to_json()),
            }
            if let Some(path) = csv {
                std::fs::write(&path, result.tightness_csv()).map_err(|e| CliError::Io { path, source: e })?;
            }
            Ok(if result.total_violations() == 0 {
                Outcome::Clean
            } else {
                Outcome::Violations
            })
        }
        Command::Demo {
            case,
            theta,
            grid,
            seed,
            trials,
            dim,
        } => {
            let case: DemoCase = case.parse()?;
            let out = run_demo(
                case,
                &DemoParams {
                    theta,
                    grid,
                    seed,
                    trials,
                    dim,
                },
            );
            print!("{}", out.text);
            Ok(if out.ok { Outcome::Clean } else { Outcome::Violations })
        }
        Command::Version => {
            println!("ur {}", env!("CARGO_PKG_VERSION"));
            Ok(Outcome::Clean)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Clean) => ExitCode::SUCCESS,
        Ok(Outcome::Violations) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
