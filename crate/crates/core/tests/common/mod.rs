#![allow(dead_code)]

pub mod oracle;

use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The bundled MovieLens-100K rating file.
pub fn movielens_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/ml-100k/u.data")
}

/// Random edge list with `m` users and `n` objects, each pair present with
/// probability `p`.
pub fn random_edges(rng: &mut impl Rng, m: usize, n: usize, p: f64) -> Vec<(u32, u32)> {
    let mut edges = Vec::new();
    for u in 0..m as u32 {
        for o in 0..n as u32 {
            if rng.random_bool(p) {
                edges.push((u, o));
            }
        }
    }
    edges
}

/// Random small instance: dimensions in `1..=max_dim`, density in [0.05, 0.6].
pub fn random_instance(rng: &mut impl Rng, max_dim: usize) -> (usize, usize, Vec<(u32, u32)>) {
    let m = rng.random_range(1..=max_dim);
    let n = rng.random_range(1..=max_dim);
    let p = rng.random_range(0.05..0.6);
    (m, n, random_edges(rng, m, n, p))
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
