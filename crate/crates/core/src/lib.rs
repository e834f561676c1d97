//! Spreading-activation collaborative filtering on sparse bipartite
//! user–object networks.
//!
//! The pipeline is:
//!
//! 1. [`dataset`]: read MovieLens ratings, keep ratings ≥ 3 as unweighted
//!    edges, split them into a training graph and a held-out probe set;
//! 2. [`similarity`]: build user–user weights, either the overlap
//!    correlation ([`cf_similarity`]) or the resource-spreading weights with
//!    a tunable object-degree exponent β ([`sa_similarity`]);
//! 3. [`recommend`]: score each user's uncollected objects by a
//!    similarity-weighted vote of the other users (optionally only the N most
//!    similar ones) and rank them;
//! 4. [`metrics`]: ranking score, popularity of recommended objects and
//!    Hamming diversity;
//! 5. [`experiment`]: repeat over seeded splits and parameter sweeps and
//!    write a CSV report.
//!
//! ```
//! use spreadrec::{sa_similarity, recommend_for_user, BipartiteGraph};
//!
//! // user 0 shares object 0 with user 1, who also holds object 1
//! let g = BipartiteGraph::build(&[(0, 0), (1, 0), (1, 1)], 2, 2).unwrap();
//! let s = sa_similarity(&g, 1.0).unwrap();
//! let list = recommend_for_user(&g, &s, 0, None).unwrap();
//! assert_eq!(list.ranked, vec![1]);
//! ```

pub mod dataset;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod metrics;
pub mod recommend;
pub mod similarity;

pub use dataset::{
    coarse_grain, derive_seed, load_movielens, make_splits, split, CoarseGrained, EdgeSet, RatingRecord,
    SplitDataset,
};
pub use error::{Error, Result};
pub use experiment::{
    run_experiment, run_on_splits, sweep_beta, sweep_topn, Algorithm, ExperimentConfig, ExperimentReport,
};
pub use graph::{BipartiteGraph, ObjectId, UserId};
pub use metrics::{avg_recommended_degree, evaluate, hamming_distance, ranking_score, MetricsReport};
pub use recommend::{
    predict_scores, predict_scores_topn, rank_uncollected, recommend_all, recommend_for_user, top_neighbors,
    RecommendationList, ScoreVector,
};
pub use similarity::{cf_similarity, sa_similarity, SimilarityKind, SimilarityMatrix};
