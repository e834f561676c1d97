//! Load MovieLens ratings, coarse-grain them into a binary user–object
//! network and draw a seeded 90/10 train/probe split.
//!
//! ```text
//! cargo run --release --example load_and_split [path/to/u.data]
//! ```

use std::path::PathBuf;

use spreadrec::dataset::{coarse_grain, load_movielens, make_splits, write_split_manifest};

fn default_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/ml-100k/u.data")
}

pub fn run_example() -> spreadrec::Result<()> {
    run(default_path())
}

fn run(path: PathBuf) -> spreadrec::Result<()> {
    let records = load_movielens(path)?;
    let network = coarse_grain(&records)?;
    let g = network.edges.to_graph();
    println!(
        "{} ratings -> {} users, {} objects, {} edges (rating >= 3)",
        records.len(),
        g.n_users(),
        g.n_objects(),
        g.n_edges()
    );
    println!(
        "mean user degree {:.2}, mean object degree {:.2}",
        g.mean_user_degree(),
        g.mean_object_degree()
    );

    let splits = make_splits(&network.edges, 0.1, 3, 2009)?;
    for (i, s) in splits.iter().enumerate() {
        let empty = s.train.users().filter(|&u| s.train.user_degree(u) == 0).count();
        println!(
            "run {i}: seed {:#018x}, {} train / {} probe edges, {empty} users without training edges",
            s.seed,
            s.train.n_edges(),
            s.probe.len()
        );
    }

    let manifest = std::env::temp_dir().join("spreadrec-split-manifest.csv");
    let file = std::fs::File::create(&manifest).map_err(|e| spreadrec::Error::Io {
        path: manifest.clone(),
        source: e,
    })?;
    write_split_manifest(&network.edges, &splits[0], std::io::BufWriter::new(file))?;
    println!("split manifest for run 0 written to {}", manifest.display());
    Ok(())
}

fn main() -> spreadrec::Result<()> {
    run(std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(default_path))
}
