//! Accuracy and diversity of CF versus SA-CF on one MovieLens split.

use std::path::PathBuf;

use spreadrec::dataset::{coarse_grain, load_movielens, split};
use spreadrec::{cf_similarity, evaluate, recommend_all, sa_similarity};

pub fn run_example() -> spreadrec::Result<()> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/ml-100k/u.data");
    let network = coarse_grain(&load_movielens(path)?)?;
    let data = split(&network.edges, 0.1, 11)?;
    let lengths = [10, 20, 50];

    println!("{:<12} {:>8} {:>9} {:>9} {:>9} {:>8} {:>8} {:>8}", "kernel", "<r>", "<k>@10", "<k>@20", "<k>@50", "S@10", "S@20", "S@50");
    let kernels = [
        ("CF", cf_similarity(&data.train)),
        ("SA b=1", sa_similarity(&data.train, 1.0)?),
        ("SA b=1.9", sa_similarity(&data.train, 1.9)?),
    ];
    for (name, s) in kernels {
        let lists = recommend_all(&data.train, &s, None)?;
        let m = evaluate(&lists, &data.train, &data.probe, &lengths)?;
        println!(
            "{:<12} {:>8.5} {:>9.1} {:>9.1} {:>9.1} {:>8.4} {:>8.4} {:>8.4}",
            name,
            m.ranking_score,
            m.avg_degree[&10],
            m.avg_degree[&20],
            m.avg_degree[&50],
            m.hamming[&10].mean,
            m.hamming[&20].mean,
            m.hamming[&50].mean
        );
    }
    Ok(())
}

fn main() -> spreadrec::Result<()> {
    run_example()
}
