//! Restricting the vote to the N most similar users: ⟨r⟩ against N.

use std::path::PathBuf;

use spreadrec::experiment::{prepare_splits, sweep_topn};
use spreadrec::{Algorithm, ExperimentConfig};

pub fn run_example() -> spreadrec::Result<()> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/ml-100k/u.data");
    let mut cfg = ExperimentConfig::new(path, Algorithm::SaTopN);
    cfg.n_runs = 2;
    cfg.list_lengths = vec![10];
    let splits = prepare_splits(&cfg)?;
    let m = splits[0].train.n_users();
    cfg.n_values = vec![1, 5, 10, 20, 40, 80, 160, 320, m - 1];
    let report = sweep_topn(&cfg, &splits)?;

    for p in report.curve() {
        let n = p.top_n.unwrap();
        let note = if n == m - 1 { "  (every other user)" } else { "" };
        println!("N = {n:>4}  <r> = {:.5}{note}", p.ranking_score);
    }
    Ok(())
}

fn main() -> spreadrec::Result<()> {
    run_example()
}
