//! ⟨r⟩, ⟨k⟩ and S as functions of the object-degree exponent β.
//!
//! Uses 2 runs and a coarse grid so it finishes in seconds; the full
//! 10-run, 0.1-step sweep is `spreadrec sweep-beta --data ... --runs 10`.

use std::path::PathBuf;

use spreadrec::experiment::{prepare_splits, sweep_beta};
use spreadrec::{Algorithm, ExperimentConfig};

pub fn run_example() -> spreadrec::Result<()> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/ml-100k/u.data");
    let mut cfg = ExperimentConfig::new(path, Algorithm::Sa);
    cfg.n_runs = 2;
    cfg.beta_values = vec![0.0, 0.5, 1.0, 1.5, 1.9, 2.5];
    let splits = prepare_splits(&cfg)?;
    let report = sweep_beta(&cfg, &splits)?;

    let curve = report.curve();
    let at_one = curve.iter().find(|p| p.beta == 1.0).unwrap().ranking_score;
    println!("{:>5} {:>8} {:>8} {:>8}", "beta", "<r>", "<k>@10", "S@10");
    for p in &curve {
        println!("{:>5} {:>8.5} {:>8.1} {:>8.4}", p.beta, p.ranking_score, p.avg_degree[&10], p.hamming[&10]);
    }
    let best = curve.iter().min_by(|a, b| a.ranking_score.total_cmp(&b.ranking_score)).unwrap();
    println!(
        "best beta {} : <r> {:.5}, {:.1}% below beta = 1",
        best.beta,
        best.ranking_score,
        100.0 * (1.0 - best.ranking_score / at_one)
    );
    Ok(())
}

fn main() -> spreadrec::Result<()> {
    run_example()
}
