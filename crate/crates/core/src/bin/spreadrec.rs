use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use spreadrec::experiment::{default_beta_grid, prepare_splits};
use spreadrec::{run_on_splits, Algorithm, ExperimentConfig};

#[derive(Parser)]
#[command(name = "spreadrec", version, about = "Spreading-activation collaborative filtering experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one algorithm at the given parameters.
    Run(CommonArgs),
    /// SA-CF over a β grid (default 0.0, 0.1, ..., 2.5).
    SweepBeta(CommonArgs),
    /// Top-N SA-CF over a neighbour-count grid.
    SweepTopn(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// MovieLens u.data file.
    #[arg(long)]
    data: PathBuf,
    /// cf, sa or sa-topn (only used by `run`).
    #[arg(long, default_value = "sa")]
    algorithm: String,
    /// Object-degree exponent(s), comma separated [default: 1.0, or the full grid for sweep-beta]
    #[arg(long, value_delimiter = ',')]
    beta: Vec<f64>,
    /// Neighbour count(s) for sa-topn, comma separated [default for sweep-topn: 5,10,...,640 and m-1]
    #[arg(long = "top-n", value_delimiter = ',')]
    top_n: Vec<usize>,
    #[arg(long, default_value_t = 0.1)]
    probe_fraction: f64,
    #[arg(long, default_value_t = 10)]
    runs: usize,
    #[arg(long, default_value_t = 2009)]
    seed: u64,
    #[arg(long, value_delimiter = ',', default_value = "10,20,50")]
    list_lengths: Vec<usize>,
    /// Output CSV; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Leave out the timing columns (byte-reproducible output).
    #[arg(long)]
    no_timing: bool,
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
}

fn run(cli: Cli) -> spreadrec::Result<()> {
    let (args, algorithm, default_betas) = match cli.command {
        Command::Run(a) => {
            let alg: Algorithm = a.algorithm.parse()?;
            (a, alg, vec![1.0])
        }
        Command::SweepBeta(a) => (a, Algorithm::Sa, default_beta_grid()),
        Command::SweepTopn(a) => (a, Algorithm::SaTopN, vec![1.0]),
    };
    if let Some(t) = args.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| spreadrec::Error::Parameter(e.to_string()))?;
    }
    let cfg = ExperimentConfig {
        data_path: args.data,
        probe_fraction: args.probe_fraction,
        n_runs: args.runs,
        master_seed: args.seed,
        algorithm,
        beta_values: if args.beta.is_empty() { default_betas } else { args.beta },
        n_values: args.top_n,
        list_lengths: args.list_lengths,
        output_path: args.out.clone(),
    };
    let splits = prepare_splits(&cfg)?;
    let report = run_on_splits(&cfg, &splits)?;
    match &args.out {
        Some(path) => report.write_csv_file(path, !args.no_timing)?,
        None => report.write_csv(std::io::stdout().lock(), !args.no_timing)?,
    }
    for a in &report.aggregates {
        eprintln!(
            "{} beta={} top_n={} <r>={:.5} ± {:.5} ({} runs)",
            a.point.algorithm,
            a.point.beta,
            a.point.top_n.map_or("-".to_string(), |n| n.to_string()),
            a.ranking_score.mean,
            a.ranking_score.std,
            a.runs
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("spreadrec: error: {e}");
            ExitCode::FAILURE
        }
    }
}
