//! Compare the overlap (CF) and spreading-activation (SA) similarity kernels
//! on a toy network, then check resource conservation on MovieLens.

use std::path::PathBuf;

use spreadrec::dataset::{coarse_grain, load_movielens};
use spreadrec::{cf_similarity, sa_similarity, BipartiteGraph};

pub fn run_example() -> spreadrec::Result<()> {
    // u0 = {o0, o1, o2}, u1 = {o0, o1}, u2 = {o2, o3}; o0 and o1 are shared
    // by two users, o2 by two, o3 is private to u2.
    let g = BipartiteGraph::build(&[(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 2), (2, 3)], 3, 4)?;

    let cf = cf_similarity(&g);
    println!("CF (symmetric):");
    for i in g.users() {
        let row: Vec<String> = g.users().map(|j| format!("{:.3}", cf.get(i, j))).collect();
        println!("  {}", row.join("  "));
    }

    for beta in [0.0, 1.0, 2.0] {
        let sa = sa_similarity(&g, beta)?;
        println!("SA beta={beta} (column j = what u_j hands out):");
        for i in g.users() {
            let row: Vec<String> = g.users().map(|j| format!("{:.3}", sa.get(i, j))).collect();
            println!("  {}", row.join("  "));
        }
        let sums: Vec<String> = g.users().map(|j| format!("{:.3}", sa.column_sum(j))).collect();
        println!("  column sums: {}", sums.join("  "));
    }

    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/ml-100k/u.data");
    let network = coarse_grain(&load_movielens(path)?)?;
    let g = network.edges.to_graph();
    let sa = sa_similarity(&g, 1.0)?;
    let worst = g
        .users()
        .map(|j| (sa.column_sum(j) - 1.0).abs())
        .fold(0.0f64, f64::max);
    println!(
        "MovieLens SA beta=1: {} nonzero weights ({:.1}% dense), max |column sum - 1| = {worst:.2e}",
        sa.nnz(),
        100.0 * sa.nnz() as f64 / (g.n_users() * g.n_users()) as f64
    );
    Ok(())
}

fn main() -> spreadrec::Result<()> {
    run_example()
}
