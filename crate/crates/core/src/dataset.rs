//! MovieLens ingestion, coarse-graining and seeded train/probe splitting.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, ObjectId, UserId};

/// Ratings strictly above this value count as "collected".
pub const COLLECT_THRESHOLD: u8 = 2;

/// One line of a MovieLens `u.data` file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RatingRecord {
    pub raw_user_id: u64,
    pub raw_item_id: u64,
    pub rating: u8,
    pub timestamp: i64,
}

/// Reads a MovieLens `u.data` file: `user \t item \t rating \t timestamp` per line.
pub fn load_movielens(path: impl AsRef<Path>) -> Result<Vec<RatingRecord>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_ratings(file, path)
}

/// Parses `u.data`-formatted ratings from any reader. `source` is only used
/// in error messages.
pub fn parse_ratings(reader: impl Read, source: impl Into<PathBuf>) -> Result<Vec<RatingRecord>> {
    let source = source.into();
    let mut records = Vec::new();
    for (idx, line) in BufReader::new(reader).lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| Error::io(&source, e))?;
        let line = line.strip_suffix('\r').unwrap_or(&line);
        records.push(parse_line(line).map_err(|message| Error::Parse {
            path: source.clone(),
            line: line_no,
            message,
        })?);
    }
    if records.is_empty() {
        return Err(Error::EmptyInput(source));
    }
    Ok(records)
}

fn parse_line(line: &str) -> std::result::Result<RatingRecord, String> {
    let fields: Vec<&str> = line.split('\t').collect();
    if fields.len() != 4 {
        return Err(format!("expected 4 tab-separated fields, found {}", fields.len()));
    }
    let int = |name: &str, s: &str| -> std::result::Result<i64, String> {
        if s.is_empty() || !s.bytes().enumerate().all(|(i, b)| b.is_ascii_digit() || (i == 0 && b == b'-')) {
            return Err(format!("{name} is not a decimal integer: {s:?}"));
        }
        s.parse::<i64>()
            .map_err(|e| format!("{name} is not a decimal integer: {s:?} ({e})"))
    };
    let user = int("user id", fields[0])?;
    let item = int("item id", fields[1])?;
    let rating = int("rating", fields[2])?;
    let timestamp = int("timestamp", fields[3])?;
    if user < 0 || item < 0 {
        return Err("negative id".to_string());
    }
    if !(1..=5).contains(&rating) {
        return Err(format!("rating {rating} outside 1..=5"));
    }
    Ok(RatingRecord {
        raw_user_id: user as u64,
        raw_item_id: item as u64,
        rating: rating as u8,
        timestamp,
    })
}

/// A deduplicated, sorted edge list together with the id space it lives in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSet {
    n_users: usize,
    n_objects: usize,
    edges: Vec<(UserId, ObjectId)>,
}

impl EdgeSet {
    /// Sorts and deduplicates `edges`; ids must be within the given dimensions.
    pub fn new(mut edges: Vec<(UserId, ObjectId)>, n_users: usize, n_objects: usize) -> Result<Self> {
        for (index, &(u, o)) in edges.iter().enumerate() {
            if u as usize >= n_users || o as usize >= n_objects {
                return Err(Error::EdgeOutOfRange {
                    index,
                    user: u as usize,
                    object: o as usize,
                    n_users,
                    n_objects,
                });
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Self {
            n_users,
            n_objects,
            edges,
        })
    }

    pub fn n_users(&self) -> usize {
        self.n_users
    }

    pub fn n_objects(&self) -> usize {
        self.n_objects
    }

    pub fn edges(&self) -> &[(UserId, ObjectId)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn to_graph(&self) -> BipartiteGraph {
        BipartiteGraph::build(&self.edges, self.n_users, self.n_objects)
            .expect("EdgeSet ids are validated on construction")
    }
}

/// Output of [`coarse_grain`]: the binary network plus the raw-id maps.
///
/// `user_ids[u]` is the raw MovieLens id of dense user `u` (likewise for
/// objects). Dense ids follow ascending raw id.
#[derive(Debug, Clone)]
pub struct CoarseGrained {
    pub edges: EdgeSet,
    pub user_ids: Vec<u64>,
    pub object_ids: Vec<u64>,
}

impl CoarseGrained {
    pub fn dense_user(&self, raw: u64) -> Option<UserId> {
        self.user_ids.binary_search(&raw).ok().map(|i| i as UserId)
    }

    pub fn dense_object(&self, raw: u64) -> Option<ObjectId> {
        self.object_ids.binary_search(&raw).ok().map(|i| i as ObjectId)
    }
}

/// Keeps ratings above [`COLLECT_THRESHOLD`] as unweighted edges.
///
/// The id maps cover every user and item that appears in `records`, including
/// those whose ratings are all dropped, so the network keeps the raw
/// dataset's dimensions.
pub fn coarse_grain(records: &[RatingRecord]) -> Result<CoarseGrained> {
    if records.is_empty() {
        return Err(Error::Parameter("cannot coarse-grain an empty record list".into()));
    }
    let dense = |raw: &mut dyn Iterator<Item = u64>| -> BTreeMap<u64, u32> {
        let mut map: BTreeMap<u64, u32> = raw.map(|id| (id, 0)).collect();
        for (i, v) in map.values_mut().enumerate() {
            *v = i as u32;
        }
        map
    };
    let users = dense(&mut records.iter().map(|r| r.raw_user_id));
    let objects = dense(&mut records.iter().map(|r| r.raw_item_id));

    let edges = records
        .iter()
        .filter(|r| r.rating > COLLECT_THRESHOLD)
        .map(|r| (users[&r.raw_user_id], objects[&r.raw_item_id]))
        .collect();
    Ok(CoarseGrained {
        edges: EdgeSet::new(edges, users.len(), objects.len())?,
        user_ids: users.into_keys().collect(),
        object_ids: objects.into_keys().collect(),
    })
}

/// A training graph and the held-out probe edges it must not see.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitDataset {
    pub train: BipartiteGraph,
    /// Probe edges in ascending `(user, object)` order.
    pub probe: Vec<(UserId, ObjectId)>,
    pub seed: u64,
}

/// Number of probe edges for `n_edges` at `fraction`, rounding half up.
pub fn probe_size(n_edges: usize, fraction: f64) -> usize {
    (fraction * n_edges as f64 + 0.5).floor() as usize
}

fn check_fraction(fraction: f64) -> Result<()> {
    if fraction.is_finite() && fraction > 0.0 && fraction < 1.0 {
        Ok(())
    } else {
        Err(Error::Parameter(format!("probe fraction {fraction} is not in (0, 1)")))
    }
}

/// Uniformly samples `probe_size(|edges|, fraction)` edges without
/// replacement as the probe set; the rest form the training graph.
///
/// Sampling uses ChaCha8 seeded from `seed`, so the split is identical on
/// every platform.
pub fn split(edges: &EdgeSet, fraction: f64, seed: u64) -> Result<SplitDataset> {
    check_fraction(fraction)?;
    let n = edges.len();
    let k = probe_size(n, fraction);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut in_probe = vec![false; n];
    for idx in rand::seq::index::sample(&mut rng, n, k) {
        in_probe[idx] = true;
    }
    let (probe, train): (Vec<_>, Vec<_>) = edges
        .edges()
        .iter()
        .zip(&in_probe)
        .partition(|(_, &p)| p);
    let probe: Vec<_> = probe.into_iter().map(|(&e, _)| e).collect();
    let train: Vec<_> = train.into_iter().map(|(&e, _)| e).collect();
    Ok(SplitDataset {
        train: BipartiteGraph::build(&train, edges.n_users(), edges.n_objects())?,
        probe,
        seed,
    })
}

/// Seed for run `run` of an experiment keyed by `master_seed`.
///
/// SplitMix64 applied to `master_seed + (run + 1) * 0x9E3779B97F4A7C15`
/// (wrapping). The mapping is part of the report format and must not change.
pub fn derive_seed(master_seed: u64, run: u64) -> u64 {
    let mut z = master_seed.wrapping_add(run.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `n_runs` independent splits; run `i` uses `derive_seed(master_seed, i)`.
pub fn make_splits(
    edges: &EdgeSet,
    fraction: f64,
    n_runs: usize,
    master_seed: u64,
) -> Result<Vec<SplitDataset>> {
    if n_runs == 0 {
        return Err(Error::Parameter("n_runs must be at least 1".into()));
    }
    check_fraction(fraction)?;
    (0..n_runs as u64)
        .map(|i| split(edges, fraction, derive_seed(master_seed, i)))
        .collect()
}

/// Writes `edge_index,user,object,partition` rows, one per edge of `edges`
/// in its sorted order.
pub fn write_split_manifest(edges: &EdgeSet, split: &SplitDataset, out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["edge_index", "user", "object", "partition"])?;
    let mut probe = split.probe.iter().peekable();
    for (i, &(u, o)) in edges.edges().iter().enumerate() {
        let part = if probe.peek() == Some(&&(u, o)) {
            probe.next();
            "probe"
        } else {
            "train"
        };
        w.write_record([i.to_string(), u.to_string(), o.to_string(), part.to_string()])?;
    }
    w.flush().map_err(|e| Error::io("<manifest>", e))?;
    Ok(())
}
