use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use kemmer::Model;
use kemmer_cli::commands::{self, CompareState, DispersionArgs};
use kemmer_cli::{with_workers, CliError, RunConfig};

/// Two-component relativistic scalar boson simulator (natural units, ħ = c = 1).
#[derive(Parser)]
#[command(name = "kemmer", version)]
struct Cli {
    /// Worker threads for per-mode evolution; output does not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,

    /// Accepted for interface compatibility; no physics path is random.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the DKP relations, Hermiticity and β³ = β exactly.
    VerifyAlgebra {
        /// Corrupt one β entry first (self-test; must exit non-zero).
        #[arg(long)]
        perturb: bool,
    },
    /// Tabulate exact, truncated and Schrödinger kinetic energies.
    Dispersion {
        #[arg(long)]
        mass: f64,
        #[arg(long)]
        k_max: f64,
        #[arg(long)]
        samples: usize,
        /// Truncation orders, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        orders: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evolve a wave packet and write one CSV snapshot per output time.
    Evolve {
        #[arg(long)]
        config: PathBuf,
        /// Output directory; overrides the config's `out`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Phase-aligned distance between two models versus time.
    Compare {
        #[arg(long)]
        config: PathBuf,
        /// Separate physics config for model B (must share the grid).
        #[arg(long)]
        config_b: Option<PathBuf>,
        #[arg(long = "a")]
        model_a: String,
        #[arg(long = "b")]
        model_b: String,
        /// Measure the large component only, or the whole state.
        #[arg(long, value_enum, default_value_t)]
        state: CompareState,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact coefficients of the 1/m expansion.
    Expand {
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load(path: &PathBuf) -> Result<RunConfig, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    Ok(RunConfig::parse(&text)?)
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn parse_model(name: &str) -> Result<Model, CliError> {
    name.parse().map_err(|e: kemmer::Error| CliError::Usage(e.to_string()))
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::VerifyAlgebra { perturb } => {
            let report = commands::verify_algebra(perturb);
            print!("{}", report.text);
            if report.passed {
                Ok(())
            } else {
                Err(CliError::Verification)
            }
        }
        Command::Dispersion {
            mass,
            k_max,
            samples,
            orders,
            out,
        } => {
            let args = DispersionArgs {
                mass,
                k_max,
                samples,
                orders,
            };
            emit(&commands::dispersion(&args)?, out.as_ref())
        }
        Command::Evolve { config, out } => {
            let cfg = load(&config)?;
            let dir = out
                .or_else(|| cfg.out.clone())
                .ok_or_else(|| CliError::Config("no output directory (use --out or `out =`)".into()))?;
            let files = commands::evolve_snapshots(&cfg)?;
            for path in commands::write_snapshots(&dir, &files)? {
                println!("{}", path.display());
            }
            Ok(())
        }
        Command::Compare {
            config,
            config_b,
            model_a,
            model_b,
            state,
            out,
        } => {
            let cfg = load(&config)?;
            let cfg_b = config_b.as_ref().map(load).transpose()?;
            let (a, b) = (parse_model(&model_a)?, parse_model(&model_b)?);
            emit(&commands::compare(&cfg, cfg_b.as_ref(), a, b, state)?, out.as_ref())
        }
        Command::Expand { n_max, out } => emit(&commands::expand(n_max)?, out.as_ref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let _ = cli.seed;
    match with_workers(cli.workers, || run(cli.command)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Verification) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
