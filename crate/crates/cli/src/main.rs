use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ogp_cli::config::{ExperimentConfig, Params, DEFAULT_THETA_GRID};
use ogp_cli::{gen, report, rules_listing, run_experiment, CliError};

#[derive(Parser)]
#[command(name = "ogp", version, about = "Overlap-gap experiments on random graphs")]
struct Cli {
    /// Master seed; overrides `seed=` in the config.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for trial parallelism (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Output directory (run, ogp-scan) or file (gen).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample an instance: `gen regular n=4 d=3 seed=1`.
    Gen {
        /// regular, er, hypergraph or pspin
        kind: String,
        /// key=value parameters
        params: Vec<String>,
    },
    /// Run the experiment described by a config file.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
    /// Summarize the records in a results directory.
    Report {
        /// Results directory (defaults to --out, then ./results).
        dir: Option<PathBuf>,
    },
    /// Overlap probe over a grid of θ values on one instance.
    OgpScan {
        #[arg(long)]
        config: PathBuf,
        /// Comma-separated θ grid; overrides `thetas=` in the config.
        #[arg(long, value_delimiter = ',')]
        thetas: Option<Vec<f64>>,
    },
    /// List the shipped local rules and their coefficients.
    Rules,
}

fn load(path: &PathBuf, seed: Option<u64>) -> Result<ExperimentConfig, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read config {}: {e}", path.display())))?;
    let mut cfg = ExperimentConfig::parse(&text)?;
    if let Some(s) = seed {
        cfg.seed = s;
    }
    Ok(cfg)
}

fn out_dir(cli_out: &Option<PathBuf>, cfg: &ExperimentConfig) -> PathBuf {
    cli_out
        .clone()
        .or_else(|| cfg.out.clone())
        .unwrap_or_else(|| PathBuf::from("results"))
}

fn execute(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Gen { kind, params } => {
            let text = gen::generate(&kind, &params, cli.seed)?;
            match &cli.out {
                Some(path) => fs::write(path, text)
                    .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))?,
                None => print!("{text}"),
            }
        }
        Command::Run { config } => {
            let cfg = load(&config, cli.seed)?;
            let files = run_experiment(&cfg, &out_dir(&cli.out, &cfg), cli.workers)?;
            println!("{}", files.csv.display());
        }
        Command::Report { dir } => {
            let dir = dir.or(cli.out).unwrap_or_else(|| PathBuf::from("results"));
            print!("{}", report::report(&dir)?);
        }
        Command::OgpScan { config, thetas } => {
            let mut cfg = load(&config, cli.seed)?;
            cfg.params = match cfg.params {
                Params::OverlapProbe(probe) => Params::OgpScan {
                    thetas: thetas.unwrap_or_else(|| DEFAULT_THETA_GRID.to_vec()),
                    probe,
                },
                Params::OgpScan { probe, thetas: from_file } => Params::OgpScan {
                    thetas: thetas.unwrap_or(from_file),
                    probe,
                },
                _ => {
                    return Err(CliError::Validation(
                        "ogp-scan needs a config of kind overlap-probe or ogp-scan".into(),
                    ))
                }
            };
            let files = run_experiment(&cfg, &out_dir(&cli.out, &cfg), cli.workers)?;
            println!("{}", files.csv.display());
        }
        Command::Rules => print!("{}", rules_listing()),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ogp: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
