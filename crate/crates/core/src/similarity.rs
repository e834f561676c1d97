//! User–user similarity kernels on a [`BipartiteGraph`].
//!
//! Two kernels are provided:
//!
//! * [`cf_similarity`]: overlap correlation
//!   `s_ij = |Γ(u_i) ∩ Γ(u_j)| / min(k(u_i), k(u_j))`, symmetric.
//! * [`sa_similarity`]: spreading-activation weight
//!   `s_ij = (1 / k(u_j)) · Σ_l a_li a_lj / k(o_l)^β`, the share of a unit of
//!   resource that leaves `u_j`, spreads evenly over its objects and then
//!   evenly back over each object's collectors, which lands on `u_i`
//!   (with object degrees damped by `β`).
//!
//! Both are computed column by column with a two-hop traversal
//! `u_j → objects of u_j → collectors of each object`, so the cost is
//! `Σ_j Σ_{o ∈ Γ(u_j)} k(o)` rather than `m² · n`. Within every entry the
//! contributions are summed in ascending object order, which makes the
//! result independent of how columns are scheduled across threads.

use std::io::Write;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, UserId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimilarityKind {
    /// Overlap over minimum degree.
    Cf,
    /// Spreading activation with object-degree exponent `beta`.
    Sa,
}

/// Sparse `m × m` matrix of non-negative weights, stored by column.
///
/// Entry `(i, j)` is `s_ij`, the weight flowing from user `j` to user `i`.
/// Column `j` therefore holds every weight given by `u_j`. Predictions for
/// user `i` weight each neighbour `l` by `s_li`, i.e. they read column `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrix {
    n_users: usize,
    kind: SimilarityKind,
    beta: f64,
    offsets: Vec<usize>,
    rows: Vec<UserId>,
    values: Vec<f64>,
}

/// Borrowed column `j`: row indices ascending, with matching values.
#[derive(Debug, Clone, Copy)]
pub struct Column<'a> {
    pub rows: &'a [UserId],
    pub values: &'a [f64],
}

impl<'a> Column<'a> {
    pub fn iter(&self) -> impl Iterator<Item = (UserId, f64)> + 'a {
        self.rows.iter().copied().zip(self.values.iter().copied())
    }

    pub fn nnz(&self) -> usize {
        self.rows.len()
    }
}

impl SimilarityMatrix {
    /// Assembles a matrix from explicit columns of `(row, weight)` pairs.
    ///
    /// Rows within a column must be strictly ascending and weights finite and
    /// non-negative.
    pub fn from_columns(
        n_users: usize,
        kind: SimilarityKind,
        beta: f64,
        columns: Vec<Vec<(UserId, f64)>>,
    ) -> Result<Self> {
        if columns.len() != n_users {
            return Err(Error::Contract(format!(
                "{} columns given for {} users",
                columns.len(),
                n_users
            )));
        }
        let mut offsets = Vec::with_capacity(n_users + 1);
        offsets.push(0);
        let mut rows = Vec::new();
        let mut values = Vec::new();
        for (j, col) in columns.into_iter().enumerate() {
            let mut prev: Option<UserId> = None;
            for (i, s) in col {
                if i as usize >= n_users || prev.is_some_and(|p| p >= i) {
                    return Err(Error::Contract(format!(
                        "column {j}: row {i} out of range or out of order"
                    )));
                }
                if !(s.is_finite() && s >= 0.0) {
                    return Err(Error::Contract(format!("column {j}: weight {s} at row {i}")));
                }
                prev = Some(i);
                rows.push(i);
                values.push(s);
            }
            offsets.push(rows.len());
        }
        Ok(Self {
            n_users,
            kind,
            beta,
            offsets,
            rows,
            values,
        })
    }

    pub fn n_users(&self) -> usize {
        self.n_users
    }

    pub fn kind(&self) -> SimilarityKind {
        self.kind
    }

    /// Degree exponent; 1 by convention for CF.
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Stored entries (explicit zeros from underflow included).
    pub fn nnz(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn column(&self, j: UserId) -> Column<'_> {
        let j = j as usize;
        let range = self.offsets[j]..self.offsets[j + 1];
        Column {
            rows: &self.rows[range.clone()],
            values: &self.values[range],
        }
    }

    /// `s_ij`; zero when not stored.
    pub fn get(&self, i: UserId, j: UserId) -> f64 {
        let col = self.column(j);
        match col.rows.binary_search(&i) {
            Ok(k) => col.values[k],
            Err(_) => 0.0,
        }
    }

    /// `Σ_i s_ij`, summed in ascending row order.
    pub fn column_sum(&self, j: UserId) -> f64 {
        self.column(j).values.iter().sum()
    }

    /// Row-major dense copy: entry `(i, j)` at `i * m + j`.
    pub fn to_dense(&self) -> Vec<f64> {
        let m = self.n_users;
        let mut dense = vec![0.0; m * m];
        for j in 0..m {
            for (i, s) in self.column(j as UserId).iter() {
                dense[i as usize * m + j] = s;
            }
        }
        dense
    }

    /// Writes `i,j,s_ij` for every stored nonzero entry, column by column.
    pub fn write_csv(&self, out: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["i", "j", "s_ij"])?;
        for j in 0..self.n_users as UserId {
            for (i, s) in self.column(j).iter().filter(|&(_, s)| s > 0.0) {
                w.write_record([i.to_string(), j.to_string(), s.to_string()])?;
            }
        }
        w.flush().map_err(|e| Error::io("<similarity>", e))?;
        Ok(())
    }
}

/// Per-worker dense accumulator with a touched-index list.
struct Scratch {
    acc: Vec<f64>,
    seen: Vec<bool>,
    touched: Vec<UserId>,
}

impl Scratch {
    fn new(m: usize) -> Self {
        Self {
            acc: vec![0.0; m],
            seen: vec![false; m],
            touched: Vec::new(),
        }
    }
}

/// Runs the two-hop traversal for every column in parallel.
///
/// `contribution(o)` is what one shared object `o` adds to an entry;
/// `finish(i, j, sum)` maps the accumulated sum to the stored weight.
fn two_hop<C, F>(g: &BipartiteGraph, kind: SimilarityKind, beta: f64, contribution: C, finish: F) -> SimilarityMatrix
where
    C: Fn(usize) -> f64 + Sync,
    F: Fn(UserId, UserId, f64) -> f64 + Sync,
{
    let m = g.n_users();
    let columns: Vec<(Vec<UserId>, Vec<f64>)> = (0..m as UserId)
        .into_par_iter()
        .map_init(
            || Scratch::new(m),
            |scratch, j| {
                for &o in g.user_items(j) {
                    let w = contribution(o as usize);
                    for &i in g.object_users(o) {
                        let iu = i as usize;
                        if !scratch.seen[iu] {
                            scratch.seen[iu] = true;
                            scratch.touched.push(i);
                        }
                        scratch.acc[iu] += w;
                    }
                }
                scratch.touched.sort_unstable();
                let rows = scratch.touched.clone();
                let values = rows
                    .iter()
                    .map(|&i| {
                        let iu = i as usize;
                        let v = finish(i, j, scratch.acc[iu]);
                        scratch.acc[iu] = 0.0;
                        scratch.seen[iu] = false;
                        v
                    })
                    .collect();
                scratch.touched.clear();
                (rows, values)
            },
        )
        .collect();

    let nnz = columns.iter().map(|(r, _)| r.len()).sum();
    let mut offsets = Vec::with_capacity(m + 1);
    offsets.push(0);
    let mut rows = Vec::with_capacity(nnz);
    let mut values = Vec::with_capacity(nnz);
    for (r, v) in columns {
        rows.extend_from_slice(&r);
        values.extend_from_slice(&v);
        offsets.push(rows.len());
    }
    SimilarityMatrix {
        n_users: m,
        kind,
        beta,
        offsets,
        rows,
        values,
    }
}

/// Overlap correlation `|common objects| / min(k(u_i), k(u_j))`.
///
/// Pairs involving a zero-degree user have no common objects and therefore
/// no stored entry. The diagonal is 1 for every user with `k > 0`.
pub fn cf_similarity(g: &BipartiteGraph) -> SimilarityMatrix {
    two_hop(
        g,
        SimilarityKind::Cf,
        1.0,
        |_| 1.0,
        |i, j, common| common / g.user_degree(i).min(g.user_degree(j)) as f64,
    )
}

/// Spreading-activation weights with object degrees raised to `beta`.
///
/// `beta = 1` is plain resource allocation: each column of a user with
/// positive degree sums to 1. Columns of zero-degree users are empty.
pub fn sa_similarity(g: &BipartiteGraph, beta: f64) -> Result<SimilarityMatrix> {
    if !beta.is_finite() {
        return Err(Error::Parameter(format!("beta must be finite, got {beta}")));
    }
    let damping: Vec<f64> = g
        .objects()
        .map(|o| 1.0 / (g.object_degree(o) as f64).powf(beta))
        .collect();
    Ok(two_hop(
        g,
        SimilarityKind::Sa,
        beta,
        |o| damping[o],
        |_, j, sum| sum / g.user_degree(j) as f64,
    ))
}
