//! Distance-based preprocessing for bicluster editing.
//!
//! Two vertices at distance at least 4 can be put in different biclusters
//! without losing optimality. Across the parts that means `d > 3` (distances
//! between parts are odd, so `d >= 5` or unreachable) and the variable is
//! fixed to 0. Inside a part it means no vertex of the other part may be
//! joined to both, giving `y_pk + y_qk <= 1` for every `k` across.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::graph::BipartiteInstance;

/// Which side a same-part pair lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    U,
    V,
}

/// `p` and `q` share `side`; `k` ranges over the other part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairCut {
    pub side: Side,
    pub p: usize,
    pub q: usize,
    pub k: usize,
}

impl PairCut {
    /// The two `(u, v)` variables of the row `y + y <= 1`.
    pub fn vars(&self) -> [(usize, usize); 2] {
        match self.side {
            Side::U => [(self.p, self.k), (self.q, self.k)],
            Side::V => [(self.k, self.p), (self.k, self.q)],
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PreprocessStats {
    pub fixed_count: usize,
    pub fixed_percentage: f64,
    pub cut_count: usize,
    pub cut_percentage: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct PreprocessResult {
    pub fixed_zero: BTreeSet<(usize, usize)>,
    pub pair_cuts: BTreeSet<PairCut>,
    pub stats: PreprocessStats,
}

/// All-pairs hop distances over `U` then `V`.
#[derive(Clone, Debug)]
pub struct DistanceTable {
    u_count: usize,
    n: usize,
    dist: Vec<Option<usize>>,
}

impl DistanceTable {
    /// Distance between two vertices given as combined indices (`U` first).
    pub fn get(&self, a: usize, b: usize) -> Option<usize> {
        self.dist[a * self.n + b]
    }

    pub fn between_u_v(&self, i: usize, j: usize) -> Option<usize> {
        self.get(i, self.u_count + j)
    }

    pub fn between_u(&self, i: usize, k: usize) -> Option<usize> {
        self.get(i, k)
    }

    pub fn between_v(&self, j: usize, l: usize) -> Option<usize> {
        self.get(self.u_count + j, self.u_count + l)
    }
}

/// BFS from every vertex; `None` marks unreachable pairs.
pub fn vertex_distances(instance: &BipartiteInstance) -> DistanceTable {
    let (u, v) = (instance.u_count(), instance.v_count());
    let n = u + v;
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            if x < u {
                (0..v)
                    .filter(|&j| instance.has_edge(x, j))
                    .map(|j| u + j)
                    .collect()
            } else {
                (0..u).filter(|&i| instance.has_edge(i, x - u)).collect()
            }
        })
        .collect();
    let mut dist = vec![None; n * n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        let row = &mut dist[s * n..(s + 1) * n];
        row[s] = Some(0);
        queue.clear();
        queue.push_back(s);
        while let Some(x) = queue.pop_front() {
            let dx = row[x].expect("queued vertices have a distance");
            for &y in &adj[x] {
                if row[y].is_none() {
                    row[y] = Some(dx + 1);
                    queue.push_back(y);
                }
            }
        }
    }
    DistanceTable {
        u_count: u,
        n,
        dist,
    }
}

fn far(d: Option<usize>, threshold: usize) -> bool {
    d.is_none_or(|d| d >= threshold)
}

pub fn preprocess(instance: &BipartiteInstance) -> PreprocessResult {
    let (u, v) = (instance.u_count(), instance.v_count());
    let table = vertex_distances(instance);
    let mut fixed_zero = BTreeSet::new();
    for i in 0..u {
        for j in 0..v {
            if far(table.between_u_v(i, j), 4) {
                fixed_zero.insert((i, j));
            }
        }
    }
    let mut pair_cuts = BTreeSet::new();
    for p in 0..u {
        for q in (p + 1)..u {
            if far(table.between_u(p, q), 4) {
                pair_cuts.extend((0..v).map(|k| PairCut {
                    side: Side::U,
                    p,
                    q,
                    k,
                }));
            }
        }
    }
    for p in 0..v {
        for q in (p + 1)..v {
            if far(table.between_v(p, q), 4) {
                pair_cuts.extend((0..u).map(|k| PairCut {
                    side: Side::V,
                    p,
                    q,
                    k,
                }));
            }
        }
    }
    let max_cuts = u * v * v.saturating_sub(1) / 2 + v * u * u.saturating_sub(1) / 2;
    let pct = |count: usize, total: usize| {
        if total == 0 {
            0.0
        } else {
            100.0 * count as f64 / total as f64
        }
    };
    let stats = PreprocessStats {
        fixed_count: fixed_zero.len(),
        fixed_percentage: pct(fixed_zero.len(), u * v),
        cut_count: pair_cuts.len(),
        cut_percentage: pct(pair_cuts.len(), max_cuts),
    };
    PreprocessResult {
        fixed_zero,
        pair_cuts,
        stats,
    }
}
