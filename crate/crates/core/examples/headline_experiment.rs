//! The 10-run CF versus SA-CF comparison on MovieLens, written as a CSV
//! report (same format as the `spreadrec` binary).

use std::path::PathBuf;

use spreadrec::experiment::{prepare_splits, run_on_splits};
use spreadrec::{Algorithm, ExperimentConfig};

pub fn run_example() -> spreadrec::Result<()> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/ml-100k/u.data");
    let cfg = ExperimentConfig::new(path, Algorithm::Sa);
    let splits = prepare_splits(&cfg)?;
    for algorithm in [Algorithm::Cf, Algorithm::Sa] {
        let cfg = ExperimentConfig { algorithm, ..cfg.clone() };
        let report = run_on_splits(&cfg, &splits)?;
        let agg = &report.aggregates[0];
        println!(
            "{algorithm:>3}: <r> = {:.5} ± {:.5} over {} runs ({:.2}s per run)",
            agg.ranking_score.mean, agg.ranking_score.std, agg.runs, agg.wall_secs.mean
        );
        let out = std::env::temp_dir().join(format!("spreadrec-{algorithm}.csv"));
        report.write_csv_file(&out, true)?;
        println!("     report: {}", out.display());
    }
    Ok(())
}

fn main() -> spreadrec::Result<()> {
    run_example()
}
