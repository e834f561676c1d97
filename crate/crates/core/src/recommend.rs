//! Score prediction and ranking of uncollected objects.
//!
//! The score of an uncollected object `o` for user `i` is the similarity
//! weighted share of `i`'s neighbours that collected it:
//!
//! ```text
//! v_io = Σ_{l≠i} s_li · a_ol  /  Σ_{l≠i} s_li
//! ```
//!
//! The denominator does not depend on `o`. Neighbours are visited in
//! ascending user id and each neighbour's objects in ascending object id, so
//! every score is a fixed-order sum. Truncating to the top-N neighbours only
//! drops terms from these sums; with `N = m - 1` the result is bit-identical
//! to the untruncated prediction.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, ObjectId, UserId};
use crate::similarity::SimilarityMatrix;

/// Scores closer than this to the first score of a tied block join the block.
///
/// Mathematically equal scores reached through different summation paths can
/// differ in the last bits; they still share a mid-rank position.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Predicted scores of one user's uncollected objects.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreVector {
    pub user: UserId,
    /// Uncollected objects, ascending.
    pub objects: Vec<ObjectId>,
    /// `scores[k]` belongs to `objects[k]`; every value lies in `[0, 1]`.
    pub scores: Vec<f64>,
    /// The user received no similarity mass; all scores are 0.
    pub isolated: bool,
}

impl ScoreVector {
    pub fn score_of(&self, object: ObjectId) -> Option<f64> {
        self.objects
            .binary_search(&object)
            .ok()
            .map(|k| self.scores[k])
    }
}

/// A user's full queue of uncollected objects, best first.
#[derive(Debug, Clone, PartialEq)]
pub struct RecommendationList {
    pub user: UserId,
    /// Descending score; equal scores ordered by ascending object id.
    pub ranked: Vec<ObjectId>,
    pub scores: Vec<f64>,
    /// 1-based position of `ranked[k]`. Tied scores (within
    /// [`TIE_TOLERANCE`]) share the mean of the ranks their block spans.
    pub positions: Vec<f64>,
    pub isolated: bool,
}

impl RecommendationList {
    /// Number of uncollected objects, `L_i`.
    pub fn len(&self) -> usize {
        self.ranked.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranked.is_empty()
    }

    /// Mid-rank position of `object`, or `None` if the user already has it.
    pub fn position_of(&self, object: ObjectId) -> Option<f64> {
        self.ranked
            .iter()
            .position(|&o| o == object)
            .map(|k| self.positions[k])
    }

    /// The first `l` objects (fewer if the list is shorter).
    pub fn top(&self, l: usize) -> &[ObjectId] {
        &self.ranked[..l.min(self.ranked.len())]
    }
}

fn check_dims(g: &BipartiteGraph, s: &SimilarityMatrix, user: UserId) -> Result<()> {
    if g.n_users() != s.n_users() {
        return Err(Error::Contract(format!(
            "graph has {} users but similarity matrix has {}",
            g.n_users(),
            s.n_users()
        )));
    }
    if user as usize >= g.n_users() {
        return Err(Error::Parameter(format!(
            "user {user} out of range for {} users",
            g.n_users()
        )));
    }
    Ok(())
}

fn check_top_n(s: &SimilarityMatrix, n: usize) -> Result<()> {
    let max = s.n_users().saturating_sub(1);
    if n == 0 || n > max {
        return Err(Error::Parameter(format!("N = {n} outside [1, {max}]")));
    }
    Ok(())
}

/// Accumulates the weighted vote over `neighbours` (ascending id, self excluded).
fn score_from(
    g: &BipartiteGraph,
    user: UserId,
    neighbours: impl Iterator<Item = (UserId, f64)>,
) -> ScoreVector {
    let mut acc = vec![0.0f64; g.n_objects()];
    let mut total = 0.0f64;
    for (l, w) in neighbours {
        total += w;
        for &o in g.user_items(l) {
            acc[o as usize] += w;
        }
    }
    let collected = g.user_items(user);
    let mut objects = Vec::with_capacity(g.n_objects() - collected.len());
    let mut next = collected.iter().peekable();
    for o in g.objects() {
        if next.peek() == Some(&&o) {
            next.next();
        } else {
            objects.push(o);
        }
    }
    let isolated = total <= 0.0;
    let scores = objects
        .iter()
        .map(|&o| if isolated { 0.0 } else { acc[o as usize] / total })
        .collect();
    ScoreVector {
        user,
        objects,
        scores,
        isolated,
    }
}

/// Scores every object `user` has not collected, using all other users.
pub fn predict_scores(g: &BipartiteGraph, s: &SimilarityMatrix, user: UserId) -> Result<ScoreVector> {
    check_dims(g, s, user)?;
    Ok(score_from(
        g,
        user,
        s.column(user).iter().filter(|&(l, _)| l != user),
    ))
}

/// Descending `(weight, then ascending id)` order.
fn by_weight(a: &(UserId, f64), b: &(UserId, f64)) -> Ordering {
    b.1.total_cmp(&a.1).then(a.0.cmp(&b.0))
}

/// The `n` users `l ≠ user` with the largest `s_l,user`, best first; ties go
/// to the lower id.
pub fn top_neighbors(s: &SimilarityMatrix, user: UserId, n: usize) -> Result<Vec<UserId>> {
    check_top_n(s, n)?;
    if user as usize >= s.n_users() {
        return Err(Error::Parameter(format!("user {user} out of range")));
    }
    let mut weights = vec![0.0f64; s.n_users()];
    for (l, w) in s.column(user).iter() {
        weights[l as usize] = w;
    }
    let mut candidates: Vec<(UserId, f64)> = (0..s.n_users() as UserId)
        .filter(|&l| l != user)
        .map(|l| (l, weights[l as usize]))
        .collect();
    if n < candidates.len() {
        candidates.select_nth_unstable_by(n - 1, by_weight);
        candidates.truncate(n);
    }
    candidates.sort_unstable_by(by_weight);
    Ok(candidates.into_iter().map(|(l, _)| l).collect())
}

/// Positive-weight members of the top-`n` neighbour set, ascending id.
///
/// Zero-weight neighbours that [`top_neighbors`] would pad the set with
/// contribute nothing to either sum, so they are left out.
fn positive_top_n(s: &SimilarityMatrix, user: UserId, n: usize) -> Vec<(UserId, f64)> {
    let mut cand: Vec<(UserId, f64)> = s
        .column(user)
        .iter()
        .filter(|&(l, w)| l != user && w > 0.0)
        .collect();
    if n < cand.len() {
        cand.select_nth_unstable_by(n - 1, by_weight);
        cand.truncate(n);
        cand.sort_unstable_by_key(|&(l, _)| l);
    }
    cand
}

/// [`predict_scores`] restricted to the `n` most similar users.
pub fn predict_scores_topn(
    g: &BipartiteGraph,
    s: &SimilarityMatrix,
    user: UserId,
    n: usize,
) -> Result<ScoreVector> {
    check_dims(g, s, user)?;
    check_top_n(s, n)?;
    Ok(score_from(g, user, positive_top_n(s, user, n).into_iter()))
}

/// Orders uncollected objects by descending score with mid-rank positions.
pub fn rank_uncollected(v: &ScoreVector) -> RecommendationList {
    let mut order: Vec<usize> = (0..v.objects.len()).collect();
    order.sort_unstable_by(|&a, &b| {
        v.scores[b]
            .total_cmp(&v.scores[a])
            .then(v.objects[a].cmp(&v.objects[b]))
    });
    let ranked: Vec<ObjectId> = order.iter().map(|&k| v.objects[k]).collect();
    let scores: Vec<f64> = order.iter().map(|&k| v.scores[k]).collect();

    let mut positions = vec![0.0; scores.len()];
    let mut start = 0;
    while start < scores.len() {
        let mut end = start + 1;
        while end < scores.len() && scores[start] - scores[end] <= TIE_TOLERANCE {
            end += 1;
        }
        // ranks start+1 ..= end
        let mid = (start + 1 + end) as f64 / 2.0;
        positions[start..end].fill(mid);
        start = end;
    }
    RecommendationList {
        user: v.user,
        ranked,
        scores,
        positions,
        isolated: v.isolated,
    }
}

/// Predicts and ranks for one user; `top_n = None` uses every neighbour.
pub fn recommend_for_user(
    g: &BipartiteGraph,
    s: &SimilarityMatrix,
    user: UserId,
    top_n: Option<usize>,
) -> Result<RecommendationList> {
    let scores = match top_n {
        None => predict_scores(g, s, user)?,
        Some(n) => predict_scores_topn(g, s, user, n)?,
    };
    Ok(rank_uncollected(&scores))
}

/// [`recommend_for_user`] for every user, in user order. Users are
/// processed in parallel; the output does not depend on the thread count.
pub fn recommend_all(
    g: &BipartiteGraph,
    s: &SimilarityMatrix,
    top_n: Option<usize>,
) -> Result<Vec<RecommendationList>> {
    if g.n_users() == 0 {
        return Ok(Vec::new());
    }
    check_dims(g, s, 0)?;
    if let Some(n) = top_n {
        check_top_n(s, n)?;
    }
    (0..g.n_users() as UserId)
        .into_par_iter()
        .map(|u| recommend_for_user(g, s, u, top_n))
        .collect()
}

/// Writes `user,rank,object,score` for the first `l` entries of each list.
pub fn write_recommendations_csv(lists: &[RecommendationList], l: usize, out: impl std::io::Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["user", "rank", "object", "score"])?;
    for list in lists {
        for (k, &o) in list.top(l).iter().enumerate() {
            w.write_record([
                list.user.to_string(),
                (k + 1).to_string(),
                o.to_string(),
                list.scores[k].to_string(),
            ])?;
        }
    }
    w.flush().map_err(|e| Error::io("<recommendations>", e))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::similarity::{sa_similarity, SimilarityKind};

    fn sv(scores: &[f64]) -> ScoreVector {
        ScoreVector {
            user: 0,
            objects: (0..scores.len() as u32).collect(),
            scores: scores.to_vec(),
            isolated: false,
        }
    }

    #[test]
    fn distinct_scores_rank_in_order() {
        let list = rank_uncollected(&sv(&[0.5, 0.9, 0.1]));
        assert_eq!(list.ranked, vec![1, 0, 2]);
        assert_eq!(list.positions, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn rounding_level_differences_tie() {
        let a = 0.1 + 0.2;
        let list = rank_uncollected(&sv(&[0.3, a, 0.1]));
        assert_ne!(a, 0.3);
        assert_eq!(list.positions, vec![1.5, 1.5, 3.0]);
    }

    #[test]
    fn ties_share_mid_rank() {
        let list = rank_uncollected(&sv(&[0.5, 0.5]));
        assert_eq!(list.positions, vec![1.5, 1.5]);
        let list = rank_uncollected(&sv(&[0.0; 7]));
        assert!(list.positions.iter().all(|&p| p == 4.0));
        let list = rank_uncollected(&sv(&[0.2, 0.7, 0.2, 0.2, 0.9]));
        assert_eq!(list.ranked, vec![4, 1, 0, 2, 3]);
        assert_eq!(list.positions, vec![1.0, 2.0, 4.0, 4.0, 4.0]);
    }

    fn uniform(m: usize) -> SimilarityMatrix {
        let cols = (0..m)
            .map(|_| (0..m as u32).map(|i| (i, 1.0)).collect())
            .collect();
        SimilarityMatrix::from_columns(m, SimilarityKind::Sa, 1.0, cols).unwrap()
    }

    #[test]
    fn unanimous_and_absent_votes() {
        // users 1 and 2 both hold object 0; nobody but user 0 holds object 2
        let g = BipartiteGraph::build(&[(0, 1), (0, 2), (1, 0), (2, 0), (2, 1)], 3, 3).unwrap();
        let s = uniform(3);
        let v = predict_scores(&g, &s, 0).unwrap();
        assert_eq!(v.objects, vec![0]);
        assert_eq!(v.score_of(0), Some(1.0));
        let v = predict_scores(&g, &s, 1).unwrap();
        assert_eq!(v.score_of(2), Some(0.5));
        assert_eq!(v.score_of(1), Some(1.0));
        assert_eq!(v.score_of(0), None);
    }

    #[test]
    fn isolated_user_gets_zero_scores() {
        let g = BipartiteGraph::build(&[(0, 0), (1, 1)], 3, 3).unwrap();
        let s = sa_similarity(&g, 1.0).unwrap();
        let v = predict_scores(&g, &s, 0).unwrap();
        assert!(v.isolated);
        assert!(v.scores.iter().all(|&x| x == 0.0));
        let list = rank_uncollected(&v);
        assert!(list.positions.iter().all(|&p| p == 1.5));
    }

    #[test]
    fn dimension_mismatch_is_a_contract_error() {
        let g = BipartiteGraph::build(&[(0, 0)], 2, 1).unwrap();
        let s = uniform(3);
        assert!(matches!(predict_scores(&g, &s, 0), Err(Error::Contract(_))));
    }

    #[test]
    fn top_neighbors_tie_break_and_range() {
        let s = uniform(5);
        assert_eq!(top_neighbors(&s, 2, 2).unwrap(), vec![0, 1]);
        assert_eq!(top_neighbors(&s, 0, 4).unwrap(), vec![1, 2, 3, 4]);
        assert!(top_neighbors(&s, 0, 0).is_err());
        assert!(top_neighbors(&s, 0, 5).is_err());

        let s = SimilarityMatrix::from_columns(
            4,
            SimilarityKind::Sa,
            1.0,
            vec![vec![(0, 9.0), (1, 0.2), (2, 0.7), (3, 0.2)], vec![], vec![], vec![]],
        )
        .unwrap();
        assert_eq!(top_neighbors(&s, 0, 1).unwrap(), vec![2]);
        assert_eq!(top_neighbors(&s, 0, 2).unwrap(), vec![2, 1]);
        // zero-weight users pad after the positive ones
        assert_eq!(top_neighbors(&s, 1, 3).unwrap(), vec![0, 2, 3]);
    }

    #[test]
    fn single_neighbour_gives_binary_scores() {
        let g = BipartiteGraph::build(
            &[(0, 0), (1, 0), (1, 1), (2, 0), (2, 2), (2, 3)],
            3,
            4,
        )
        .unwrap();
        let s = sa_similarity(&g, 1.0).unwrap();
        let best = top_neighbors(&s, 0, 1).unwrap()[0];
        let v = predict_scores_topn(&g, &s, 0, 1).unwrap();
        for (&o, &score) in v.objects.iter().zip(&v.scores) {
            let expect = if g.has_edge(best, o).unwrap() { 1.0 } else { 0.0 };
            assert_eq!(score, expect);
        }
    }

    #[test]
    fn full_neighbourhood_matches_untruncated() {
        let g = BipartiteGraph::build(
            &[(0, 0), (0, 1), (1, 0), (1, 2), (2, 1), (2, 2), (3, 3), (3, 0)],
            4,
            4,
        )
        .unwrap();
        let s = sa_similarity(&g, 1.3).unwrap();
        for u in g.users() {
            assert_eq!(
                predict_scores(&g, &s, u).unwrap(),
                predict_scores_topn(&g, &s, u, 3).unwrap()
            );
        }
    }

    #[test]
    fn recommendation_dump() {
        let g = BipartiteGraph::build(&[(0, 0), (1, 0), (1, 1)], 2, 3).unwrap();
        let s = sa_similarity(&g, 1.0).unwrap();
        let lists = recommend_all(&g, &s, None).unwrap();
        let mut buf = Vec::new();
        write_recommendations_csv(&lists, 1, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "user,rank,object,score\n0,1,1,1\n1,1,2,0\n"
        );
    }
}
