//! Accuracy and diversity measures over a set of recommendation lists.
//!
//! * ranking score `⟨r⟩`: mean relative position `position / L_i` of every
//!   probe entry in its user's queue (lower is better);
//! * average recommended degree `⟨k⟩`: mean training degree of the objects
//!   in the top-`L` of each list (popularity of what gets recommended);
//! * Hamming diversity `S`: mean of `1 - Q/L` over user pairs, where `Q` is
//!   the overlap of the two top-`L` lists.
//!
//! Lists are indexed by user id: `lists[u].user == u`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, ObjectId, UserId};
use crate::recommend::RecommendationList;

/// Ranking score over a probe set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankingScore {
    pub mean: f64,
    pub entries: usize,
    /// Probe entries whose user received no similarity mass. They are still
    /// in `mean`, each at the full-tie value `(L+1)/(2L)`.
    pub isolated_entries: usize,
}

/// Hamming diversity at one list length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HammingStat {
    pub mean: f64,
    pub pairs: usize,
    /// Pairs left out because one of the lists is shorter than `L`.
    pub excluded_pairs: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport {
    pub ranking_score: f64,
    pub probe_entries: usize,
    pub skipped_probe_entries: usize,
    pub avg_degree: BTreeMap<usize, f64>,
    pub hamming: BTreeMap<usize, HammingStat>,
    /// Users left out of the diversity measures (no similarity mass).
    pub isolated_users: usize,
}

fn check_indexed(lists: &[RecommendationList]) -> Result<()> {
    match lists.iter().enumerate().find(|(u, l)| l.user as usize != *u) {
        Some((u, l)) => Err(Error::Contract(format!(
            "list at index {u} belongs to user {}",
            l.user
        ))),
        None => Ok(()),
    }
}

/// Mean of `position(o) / L_u` over all probe entries `(u, o)`.
///
/// A probe object that is missing from its user's list (i.e. was collected
/// in training) is a data-integrity error.
pub fn ranking_score(lists: &[RecommendationList], probe: &[(UserId, ObjectId)]) -> Result<RankingScore> {
    check_indexed(lists)?;
    if probe.is_empty() {
        return Err(Error::Parameter("empty probe set".into()));
    }
    let mut by_user: BTreeMap<UserId, Vec<ObjectId>> = BTreeMap::new();
    for &(u, o) in probe {
        if u as usize >= lists.len() {
            return Err(Error::DataIntegrity(format!("probe user {u} has no list")));
        }
        by_user.entry(u).or_default().push(o);
    }

    let mut sum = 0.0;
    let mut isolated_entries = 0;
    let mut lookup: Vec<f64> = Vec::new();
    for (u, objects) in &by_user {
        let list = &lists[*u as usize];
        let top = list.ranked.iter().copied().max().map_or(0, |o| o as usize + 1);
        let needed = top.max(objects.iter().map(|&o| o as usize + 1).max().unwrap_or(0));
        lookup.clear();
        lookup.resize(needed, f64::NAN);
        for (&o, &p) in list.ranked.iter().zip(&list.positions) {
            lookup[o as usize] = p;
        }
        let len = list.len() as f64;
        for &o in objects {
            let p = lookup[o as usize];
            if p.is_nan() {
                return Err(Error::DataIntegrity(format!(
                    "probe edge ({u}, {o}) is collected in training"
                )));
            }
            sum += p / len;
        }
        if list.isolated {
            isolated_entries += objects.len();
        }
    }
    Ok(RankingScore {
        mean: sum / probe.len() as f64,
        entries: probe.len(),
        isolated_entries,
    })
}

/// Mean training degree of the top-`l` objects pooled over all lists.
///
/// Lists shorter than `l` contribute all their entries. Returns 0 if no list
/// has any entry.
pub fn avg_recommended_degree<'a>(
    lists: impl IntoIterator<Item = &'a RecommendationList>,
    g: &BipartiteGraph,
    l: usize,
) -> Result<f64> {
    if l == 0 {
        return Err(Error::Parameter("list length must be at least 1".into()));
    }
    let mut total = 0usize;
    let mut count = 0usize;
    for list in lists {
        for &o in list.top(l) {
            total += g.object_degree(o);
            count += 1;
        }
    }
    Ok(if count == 0 { 0.0 } else { total as f64 / count as f64 })
}

/// Mean pairwise Hamming distance between top-`l` lists.
///
/// Every unordered pair of lists with at least `l` entries is compared
/// exactly. The overlap counts are summed as integers, so the result does
/// not depend on evaluation order.
pub fn hamming_distance<'a>(
    lists: impl IntoIterator<Item = &'a RecommendationList>,
    l: usize,
) -> Result<HammingStat> {
    if l == 0 {
        return Err(Error::Parameter("list length must be at least 1".into()));
    }
    let lists: Vec<&RecommendationList> = lists.into_iter().collect();
    let long: Vec<&[ObjectId]> = lists.iter().filter(|x| x.len() >= l).map(|x| x.top(l)).collect();
    let short = lists.len() - long.len();
    let excluded_pairs = short * (short.saturating_sub(1)) / 2 + short * long.len();

    let n_objects = long
        .iter()
        .flat_map(|t| t.iter())
        .map(|&o| o as usize + 1)
        .max()
        .unwrap_or(0);
    let words = n_objects.div_ceil(64);
    let bits: Vec<Vec<u64>> = long
        .iter()
        .map(|top| {
            let mut b = vec![0u64; words];
            for &o in *top {
                b[o as usize / 64] |= 1 << (o % 64);
            }
            b
        })
        .collect();

    let overlap: u64 = (0..bits.len())
        .into_par_iter()
        .map(|i| {
            bits[i + 1..]
                .iter()
                .map(|other| {
                    bits[i]
                        .iter()
                        .zip(other)
                        .map(|(a, b)| (a & b).count_ones() as u64)
                        .sum::<u64>()
                })
                .sum::<u64>()
        })
        .sum();
    let pairs = bits.len() * bits.len().saturating_sub(1) / 2;
    let mean = if pairs == 0 {
        0.0
    } else {
        1.0 - overlap as f64 / (l as f64 * pairs as f64)
    };
    Ok(HammingStat {
        mean,
        pairs,
        excluded_pairs,
    })
}

/// All measures for one set of lists.
///
/// Lists of isolated users take part in the ranking score but not in `⟨k⟩`
/// or `S`: their order carries no information.
pub fn evaluate(
    lists: &[RecommendationList],
    train: &BipartiteGraph,
    probe: &[(UserId, ObjectId)],
    list_lengths: &[usize],
) -> Result<MetricsReport> {
    let r = ranking_score(lists, probe)?;
    let informed: Vec<&RecommendationList> = lists.iter().filter(|l| !l.isolated).collect();
    let mut avg_degree = BTreeMap::new();
    let mut hamming = BTreeMap::new();
    for &l in list_lengths {
        avg_degree.insert(l, avg_recommended_degree(informed.iter().copied(), train, l)?);
        hamming.insert(l, hamming_distance(informed.iter().copied(), l)?);
    }
    Ok(MetricsReport {
        ranking_score: r.mean,
        probe_entries: r.entries,
        skipped_probe_entries: r.isolated_entries,
        avg_degree,
        hamming,
        isolated_users: lists.len() - informed.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recommend::{rank_uncollected, ScoreVector};

    fn list(user: u32, ranked: &[u32]) -> RecommendationList {
        let n = ranked.len();
        RecommendationList {
            user,
            ranked: ranked.to_vec(),
            scores: (0..n).map(|k| (n - k) as f64).collect(),
            positions: (1..=n).map(|k| k as f64).collect(),
            isolated: false,
        }
    }

    #[test]
    fn tenth_of_hundred_is_point_one() {
        let ranked: Vec<u32> = (0..100).collect();
        let lists = vec![list(0, &ranked)];
        let r = ranking_score(&lists, &[(0, 9)]).unwrap();
        assert!((r.mean - 0.1).abs() < 1e-15);
    }

    #[test]
    fn best_case_is_one_over_len() {
        let lists = vec![list(0, &[3, 1, 2, 0]), list(1, &[2, 0, 1])];
        let r = ranking_score(&lists, &[(0, 3), (1, 2)]).unwrap();
        assert!((r.mean - (0.25 + 1.0 / 3.0) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn full_tie_gives_half_plus() {
        let v = ScoreVector {
            user: 0,
            objects: (0..8).collect(),
            scores: vec![0.0; 8],
            isolated: true,
        };
        let lists = vec![rank_uncollected(&v)];
        let r = ranking_score(&lists, &[(0, 0), (0, 7)]).unwrap();
        assert_eq!(r.mean, 9.0 / 16.0);
        assert_eq!(r.isolated_entries, 2);
    }

    #[test]
    fn collected_probe_object_is_rejected() {
        let lists = vec![list(0, &[1, 2])];
        assert!(matches!(ranking_score(&lists, &[(0, 0)]), Err(Error::DataIntegrity(_))));
        assert!(matches!(ranking_score(&lists, &[(3, 1)]), Err(Error::DataIntegrity(_))));
    }

    #[test]
    fn mis_indexed_lists_rejected() {
        let lists = vec![list(1, &[0])];
        assert!(matches!(ranking_score(&lists, &[(0, 0)]), Err(Error::Contract(_))));
    }

    #[test]
    fn average_degree() {
        // object degrees: 0 -> 5, 1 -> 3, 2 -> 1
        let mut edges = vec![];
        for u in 0..5 {
            edges.push((u, 0));
        }
        for u in 0..3 {
            edges.push((u, 1));
        }
        edges.push((0, 2));
        let g = BipartiteGraph::build(&edges, 6, 3).unwrap();
        let lists = [list(5, &[0, 1, 2])];
        assert_eq!(avg_recommended_degree(&lists, &g, 2).unwrap(), 4.0);
        assert_eq!(avg_recommended_degree(&lists, &g, 10).unwrap(), 3.0);
        let same = [list(0, &[0]), list(1, &[0])];
        assert_eq!(avg_recommended_degree(&same, &g, 1).unwrap(), 5.0);
        assert!(avg_recommended_degree(&same, &g, 0).is_err());
    }

    #[test]
    fn hamming_extremes() {
        let h = hamming_distance(&[list(0, &[1, 2]), list(1, &[2, 1])], 2).unwrap();
        assert_eq!(h.mean, 0.0);
        let h = hamming_distance(&[list(0, &[1, 2]), list(1, &[3, 4])], 2).unwrap();
        assert_eq!(h.mean, 1.0);
        let h = hamming_distance(&[list(0, &[0, 1]), list(1, &[1, 2])], 2).unwrap();
        assert_eq!(h.mean, 0.5);
        assert_eq!(h.pairs, 1);
    }

    #[test]
    fn short_lists_excluded_from_pairs() {
        let lists = [list(0, &[0, 1, 2]), list(1, &[0, 1, 3]), list(2, &[5]), list(3, &[6])];
        let h = hamming_distance(&lists, 3).unwrap();
        assert_eq!(h.pairs, 1);
        assert_eq!(h.excluded_pairs, 5);
        assert!((h.mean - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn hamming_at_one_counts_differing_heads() {
        let lists = [list(0, &[7, 1]), list(1, &[7, 2]), list(2, &[3, 7])];
        let h = hamming_distance(&lists, 1).unwrap();
        assert!((h.mean - 2.0 / 3.0).abs() < 1e-15);
    }
}
