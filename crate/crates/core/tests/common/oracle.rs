//! Brute-force reference implementations.
//!
//! Everything here evaluates the defining formulas literally on a dense
//! object × user 0/1 matrix, with no sparsity shortcuts and no code shared
//! with the library kernels. Instances are capped at 20 × 20.

#![allow(dead_code)]

pub const MAX_DIM: usize = 20;

/// `a[l][i] = 1` iff object `l` is collected by user `i`.
#[derive(Debug, Clone)]
pub struct DenseInstance {
    pub a: Vec<Vec<u8>>,
}

impl DenseInstance {
    pub fn new(a: Vec<Vec<u8>>) -> Result<Self, String> {
        let n = a.len();
        let m = a.first().map_or(0, |r| r.len());
        if n > MAX_DIM || m > MAX_DIM {
            return Err(format!("instance {n}x{m} exceeds the {MAX_DIM}x{MAX_DIM} oracle bound"));
        }
        if a.iter().any(|r| r.len() != m) {
            return Err("ragged adjacency".into());
        }
        Ok(Self { a })
    }

    pub fn from_edges(edges: &[(u32, u32)], m: usize, n: usize) -> Result<Self, String> {
        let mut a = vec![vec![0u8; m]; n];
        for &(u, o) in edges {
            a[o as usize][u as usize] = 1;
        }
        Self::new(a)
    }

    pub fn n_objects(&self) -> usize {
        self.a.len()
    }

    pub fn n_users(&self) -> usize {
        self.a.first().map_or(0, |r| r.len())
    }

    pub fn user_degree(&self, i: usize) -> f64 {
        (0..self.n_objects()).map(|l| self.a[l][i] as f64).sum()
    }

    pub fn object_degree(&self, l: usize) -> f64 {
        (0..self.n_users()).map(|i| self.a[l][i] as f64).sum()
    }
}

/// `s[i][j] = Σ_l a_li a_lj / min(k(u_i), k(u_j))`, zero when a degree is 0.
pub fn oracle_cf(inst: &DenseInstance) -> Vec<Vec<f64>> {
    let m = inst.n_users();
    let mut s = vec![vec![0.0; m]; m];
    for i in 0..m {
        for j in 0..m {
            let mut common = 0.0;
            for l in 0..inst.n_objects() {
                common += (inst.a[l][i] * inst.a[l][j]) as f64;
            }
            let d = inst.user_degree(i).min(inst.user_degree(j));
            s[i][j] = if d > 0.0 { common / d } else { 0.0 };
        }
    }
    s
}

/// `s[i][j] = (1/k(u_j)) Σ_l a_li a_lj / k(o_l)^β`, zero column when `k(u_j) = 0`.
pub fn oracle_sa(inst: &DenseInstance, beta: f64) -> Result<Vec<Vec<f64>>, String> {
    if inst.n_users() > MAX_DIM || inst.n_objects() > MAX_DIM {
        return Err("oversize instance".into());
    }
    let m = inst.n_users();
    let mut s = vec![vec![0.0; m]; m];
    for i in 0..m {
        for j in 0..m {
            let kj = inst.user_degree(j);
            if kj == 0.0 {
                continue;
            }
            let mut sum = 0.0;
            for l in 0..inst.n_objects() {
                let num = (inst.a[l][i] * inst.a[l][j]) as f64;
                if num > 0.0 {
                    sum += num / inst.object_degree(l).powf(beta);
                }
            }
            s[i][j] = sum / kj;
        }
    }
    Ok(s)
}

/// Moves one unit of resource from user `j` to its objects and back to users.
pub fn oracle_diffusion(inst: &DenseInstance, j: usize) -> Result<Vec<f64>, String> {
    let kj = inst.user_degree(j);
    if kj == 0.0 {
        return Err(format!("user {j} has no objects to spread over"));
    }
    let mut on_objects = vec![0.0; inst.n_objects()];
    for (l, mass) in on_objects.iter_mut().enumerate() {
        if inst.a[l][j] == 1 {
            *mass = 1.0 / kj;
        }
    }
    let mut on_users = vec![0.0; inst.n_users()];
    for (l, &mass) in on_objects.iter().enumerate() {
        if mass == 0.0 {
            continue;
        }
        let ko = inst.object_degree(l);
        for (i, slot) in on_users.iter_mut().enumerate() {
            if inst.a[l][i] == 1 {
                *slot += mass / ko;
            }
        }
    }
    Ok(on_users)
}

/// Weighted vote of the users in `neighbours` (every user but `i` when
/// `None`): `Some(v)` for uncollected objects, `None` for collected ones.
/// `s[l][i]` is the weight of neighbour `l`.
pub fn oracle_scores(
    inst: &DenseInstance,
    s: &[Vec<f64>],
    i: usize,
    neighbours: Option<&[usize]>,
) -> Vec<Option<f64>> {
    let all: Vec<usize> = (0..inst.n_users()).filter(|&l| l != i).collect();
    let set = neighbours.unwrap_or(&all);
    let den: f64 = set.iter().map(|&l| s[l][i]).sum();
    (0..inst.n_objects())
        .map(|o| {
            if inst.a[o][i] == 1 {
                return None;
            }
            if den <= 0.0 {
                return Some(0.0);
            }
            let num: f64 = set.iter().map(|&l| s[l][i] * inst.a[o][l] as f64).sum();
            Some(num / den)
        })
        .collect()
}

/// The `n` users `l ≠ i` with the largest `s[l][i]` by full sort, ties to the
/// lower id.
pub fn oracle_top_neighbors(s: &[Vec<f64>], i: usize, n: usize) -> Vec<usize> {
    let mut all: Vec<usize> = (0..s.len()).filter(|&l| l != i).collect();
    all.sort_by(|&a, &b| s[b][i].partial_cmp(&s[a][i]).unwrap().then(a.cmp(&b)));
    all.truncate(n);
    all
}

/// Mid-rank position of every scored object by counting: objects with a
/// strictly larger score, plus half of the tied block (itself included) plus
/// one half. Scores within `tol` count as tied.
pub fn oracle_positions(scores: &[Option<f64>], tol: f64) -> Vec<Option<f64>> {
    scores
        .iter()
        .map(|v| {
            let v = (*v)?;
            let better = scores.iter().flatten().filter(|&&w| w > v + tol).count() as f64;
            let tied = scores.iter().flatten().filter(|&&w| (w - v).abs() <= tol).count() as f64;
            Some(better + (tied + 1.0) / 2.0)
        })
        .collect()
}

/// `⟨r⟩` from per-user oracle positions.
pub fn oracle_ranking_score(positions: &[Vec<Option<f64>>], probe: &[(u32, u32)]) -> f64 {
    let sum: f64 = probe
        .iter()
        .map(|&(u, o)| {
            let row = &positions[u as usize];
            let len = row.iter().flatten().count() as f64;
            row[o as usize].expect("probe object is uncollected") / len
        })
        .sum();
    sum / probe.len() as f64
}
