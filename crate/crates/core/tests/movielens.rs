//! Dataset-level checks on the bundled MovieLens-100K ratings.

mod common;

use std::collections::BTreeSet;

use common::movielens_path;
use spreadrec::dataset::{coarse_grain, load_movielens, make_splits, probe_size, split};

#[test]
fn loads_all_ratings() {
    let records = load_movielens(movielens_path()).unwrap();
    assert_eq!(records.len(), 100_000);
    assert_eq!(
        (records[0].raw_user_id, records[0].raw_item_id, records[0].rating, records[0].timestamp),
        (196, 242, 3, 881250949)
    );
}

#[test]
fn coarse_graining_threshold() {
    let records = load_movielens(movielens_path()).unwrap();
    let cg = coarse_grain(&records).unwrap();
    assert_eq!(cg.edges.n_users(), 943);
    assert_eq!(cg.edges.n_objects(), 1682);
    let kept = records.iter().filter(|r| r.rating >= 3).count();
    assert_eq!(cg.edges.len(), kept);
    // every kept edge maps back to a rating >= 3, every dropped record is <= 2
    let edges: BTreeSet<_> = cg.edges.edges().iter().copied().collect();
    for r in &records {
        let e = (cg.dense_user(r.raw_user_id).unwrap(), cg.dense_object(r.raw_item_id).unwrap());
        assert_eq!(edges.contains(&e), r.rating >= 3);
    }
}

#[test]
fn ten_run_splits() {
    let records = load_movielens(movielens_path()).unwrap();
    let cg = coarse_grain(&records).unwrap();
    let splits = make_splits(&cg.edges, 0.1, 10, 2009).unwrap();
    let k = probe_size(cg.edges.len(), 0.1);
    let distinct: BTreeSet<_> = splits.iter().map(|s| s.probe.clone()).collect();
    assert_eq!(distinct.len(), 10);
    for s in &splits {
        assert_eq!(s.probe.len(), k);
        assert_eq!(s.train.n_edges() + s.probe.len(), cg.edges.len());
        assert_eq!(s.train.n_users(), 943);
        assert_eq!(s.train.n_objects(), 1682);
        assert!(s.probe.iter().all(|&(u, o)| !s.train.has_edge(u, o).unwrap()));
    }
    assert_eq!(splits, make_splits(&cg.edges, 0.1, 10, 2009).unwrap());
    assert_eq!(splits[3], split(&cg.edges, 0.1, splits[3].seed).unwrap());
}
