//! Top-10 recommendations for a single MovieLens user, with all neighbours
//! and with only the 40 most similar ones.
//!
//! ```text
//! cargo run --release --example recommend_user [raw_user_id]
//! ```

use std::path::PathBuf;

use spreadrec::dataset::{coarse_grain, load_movielens, split};
use spreadrec::{recommend_for_user, sa_similarity, top_neighbors};

pub fn run_example() -> spreadrec::Result<()> {
    run(196)
}

fn run(raw_user: u64) -> spreadrec::Result<()> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/ml-100k/u.data");
    let network = coarse_grain(&load_movielens(path)?)?;
    let user = network
        .dense_user(raw_user)
        .ok_or_else(|| spreadrec::Error::Parameter(format!("no user {raw_user}")))?;

    let data = split(&network.edges, 0.1, 7)?;
    let g = &data.train;
    let s = sa_similarity(g, 1.9)?;

    let neighbours = top_neighbors(&s, user, 5)?;
    let raw: Vec<u64> = neighbours.iter().map(|&l| network.user_ids[l as usize]).collect();
    println!("user {raw_user}: {} training objects, closest users {raw:?}", g.user_degree(user));

    let held_out: Vec<u32> = data.probe.iter().filter(|e| e.0 == user).map(|e| e.1).collect();
    for (label, top_n) in [("all neighbours", None), ("top-40 neighbours", Some(40))] {
        let list = recommend_for_user(g, &s, user, top_n)?;
        println!("{label}:");
        for (k, &o) in list.top(10).iter().enumerate() {
            let mark = if held_out.contains(&o) { "  <- in probe" } else { "" };
            println!(
                "  {:2}. movie {:4}  score {:.4}  degree {:3}{mark}",
                k + 1,
                network.object_ids[o as usize],
                list.scores[k],
                g.object_degree(o)
            );
        }
        let mean_r: f64 = held_out
            .iter()
            .map(|&o| list.position_of(o).unwrap() / list.len() as f64)
            .sum::<f64>()
            / held_out.len().max(1) as f64;
        println!("  mean relative position of {} probe movies: {mean_r:.4}", held_out.len());
    }
    Ok(())
}

fn main() -> spreadrec::Result<()> {
    match std::env::args().nth(1) {
        Some(a) => run(a.parse().map_err(|_| spreadrec::Error::Parameter(format!("bad user id {a:?}")))?),
        None => run_example(),
    }
}
