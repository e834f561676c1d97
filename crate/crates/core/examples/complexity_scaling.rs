//! Timing of the sparse SA similarity build on random graphs with fixed mean
//! degrees as the user count doubles. Prints a CSV benchmark report.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spreadrec::{sa_similarity, BipartiteGraph};

fn random_graph(rng: &mut impl Rng, m: usize, degree: usize) -> BipartiteGraph {
    let mut edges = Vec::with_capacity(m * degree);
    for u in 0..m as u32 {
        for _ in 0..degree {
            edges.push((u, rng.random_range(0..m as u32)));
        }
    }
    BipartiteGraph::build(&edges, m, m).expect("ids in range")
}

pub fn run_example() -> spreadrec::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    println!("users,edges,two_hop_work,build_ms,ns_per_unit_work");
    for m in [2_000, 4_000, 8_000, 16_000] {
        let g = random_graph(&mut rng, m, 10);
        let work: usize = g.users().flat_map(|u| g.user_items(u)).map(|&o| g.object_degree(o)).sum();
        let start = Instant::now();
        let s = sa_similarity(&g, 1.0)?;
        let elapsed = start.elapsed();
        std::hint::black_box(s);
        println!(
            "{m},{},{work},{:.3},{:.2}",
            g.n_edges(),
            elapsed.as_secs_f64() * 1e3,
            elapsed.as_nanos() as f64 / work as f64
        );
    }
    Ok(())
}

fn main() -> spreadrec::Result<()> {
    run_example()
}
