//! Immutable sparse bipartite user–object network.
//!
//! Both incidence directions are stored as sorted adjacency lists in CSR
//! layout, so every traversal visits neighbours in ascending id order. All
//! floating-point reductions downstream rely on that order for
//! bit-reproducible results.

use crate::error::{Error, Result};

/// Dense 0-based user index.
pub type UserId = u32;
/// Dense 0-based object index.
pub type ObjectId = u32;

/// Unweighted bipartite graph between `n_users` users and `n_objects` objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    n_users: usize,
    n_objects: usize,
    user_offsets: Vec<usize>,
    user_items: Vec<ObjectId>,
    object_offsets: Vec<usize>,
    object_users: Vec<UserId>,
}

impl BipartiteGraph {
    /// Builds the graph from a list of `(user, object)` edges.
    ///
    /// Duplicate edges are collapsed. An edge with an id outside
    /// `[0, n_users) x [0, n_objects)` is rejected, naming the first offender.
    pub fn build(edges: &[(UserId, ObjectId)], n_users: usize, n_objects: usize) -> Result<Self> {
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

        let mut sorted = edges.to_vec();
        sorted.sort_unstable();
        sorted.dedup();

        let (user_offsets, user_items) = compress(n_users, sorted.iter().map(|&(u, o)| (u, o)));

        let mut by_object: Vec<(ObjectId, UserId)> = sorted.iter().map(|&(u, o)| (o, u)).collect();
        by_object.sort_unstable();
        let (object_offsets, object_users) = compress(n_objects, by_object.into_iter());

        Ok(Self {
            n_users,
            n_objects,
            user_offsets,
            user_items,
            object_offsets,
            object_users,
        })
    }

    pub fn n_users(&self) -> usize {
        self.n_users
    }

    pub fn n_objects(&self) -> usize {
        self.n_objects
    }

    pub fn n_edges(&self) -> usize {
        self.user_items.len()
    }

    /// Objects collected by `user`, ascending.
    #[inline]
    pub fn user_items(&self, user: UserId) -> &[ObjectId] {
        let u = user as usize;
        &self.user_items[self.user_offsets[u]..self.user_offsets[u + 1]]
    }

    /// Users who collected `object`, ascending.
    #[inline]
    pub fn object_users(&self, object: ObjectId) -> &[UserId] {
        let o = object as usize;
        &self.object_users[self.object_offsets[o]..self.object_offsets[o + 1]]
    }

    /// k(u): number of objects collected by `user`.
    #[inline]
    pub fn user_degree(&self, user: UserId) -> usize {
        let u = user as usize;
        self.user_offsets[u + 1] - self.user_offsets[u]
    }

    /// k(o): number of users who collected `object`.
    #[inline]
    pub fn object_degree(&self, object: ObjectId) -> usize {
        let o = object as usize;
        self.object_offsets[o + 1] - self.object_offsets[o]
    }

    /// Whether `user` collected `object`. Binary search over the user's items.
    pub fn has_edge(&self, user: UserId, object: ObjectId) -> Result<bool> {
        if user as usize >= self.n_users || object as usize >= self.n_objects {
            return Err(Error::QueryOutOfRange {
                user: user as usize,
                object: object as usize,
                n_users: self.n_users,
                n_objects: self.n_objects,
            });
        }
        Ok(self.user_items(user).binary_search(&object).is_ok())
    }

    /// All edges in ascending `(user, object)` order.
    pub fn edges(&self) -> impl Iterator<Item = (UserId, ObjectId)> + '_ {
        (0..self.n_users as UserId)
            .flat_map(move |u| self.user_items(u).iter().map(move |&o| (u, o)))
    }

    pub fn users(&self) -> std::ops::Range<UserId> {
        0..self.n_users as UserId
    }

    pub fn objects(&self) -> std::ops::Range<ObjectId> {
        0..self.n_objects as ObjectId
    }

    pub fn mean_user_degree(&self) -> f64 {
        if self.n_users == 0 {
            0.0
        } else {
            self.n_edges() as f64 / self.n_users as f64
        }
    }

    pub fn mean_object_degree(&self) -> f64 {
        if self.n_objects == 0 {
            0.0
        } else {
            self.n_edges() as f64 / self.n_objects as f64
        }
    }
}

/// Packs sorted `(row, col)` pairs into CSR offsets and column indices.
fn compress(n_rows: usize, pairs: impl Iterator<Item = (u32, u32)>) -> (Vec<usize>, Vec<u32>) {
    let mut offsets = vec![0usize; n_rows + 1];
    let mut cols = Vec::new();
    for (row, col) in pairs {
        offsets[row as usize + 1] += 1;
        cols.push(col);
    }
    for r in 0..n_rows {
        offsets[r + 1] += offsets[r];
    }
    (offsets, cols)
}
