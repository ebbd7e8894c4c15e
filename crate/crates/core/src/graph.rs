//! Bipartite instances, biclusterizations and the quantities defined on them:
//! edit cost, the bicluster-graph test, grouping efficacy and cell views.
//!
//! Rows of a part-machine matrix are the `U` side (products) and columns are
//! the `V` side (machines). A biclusterization of the graph and a cell
//! assignment of the matrix are the same object.

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bipartite graph `G = (U, V, E)`, equivalently a binary matrix with
/// `u_count` rows and `v_count` columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteInstance {
    u_count: usize,
    v_count: usize,
    adj: Vec<bool>,
    edge_count: usize,
    name: Option<String>,
}

impl BipartiteInstance {
    pub fn new<I>(u_count: usize, v_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if u_count == 0 || v_count == 0 {
            return Err(Error::InvalidInstance(format!(
                "both parts must be non-empty (got {u_count}x{v_count})"
            )));
        }
        let mut adj = vec![false; u_count * v_count];
        let mut edge_count = 0;
        for (i, j) in edges {
            if i >= u_count || j >= v_count {
                return Err(Error::InvalidInstance(format!(
                    "edge ({i}, {j}) out of range for {u_count}x{v_count}"
                )));
            }
            let slot = &mut adj[i * v_count + j];
            if *slot {
                return Err(Error::InvalidInstance(format!("duplicate edge ({i}, {j})")));
            }
            *slot = true;
            edge_count += 1;
        }
        Ok(Self {
            u_count,
            v_count,
            adj,
            edge_count,
            name: None,
        })
    }

    /// Builds an instance from matrix rows of 0/1 flags.
    pub fn from_matrix<R: AsRef<[bool]>>(rows: &[R]) -> Result<Self> {
        let u_count = rows.len();
        let v_count = rows.first().map_or(0, |r| r.as_ref().len());
        if let Some((i, r)) = rows
            .iter()
            .enumerate()
            .find(|(_, r)| r.as_ref().len() != v_count)
        {
            return Err(Error::InvalidInstance(format!(
                "row {i} has {} entries, expected {v_count}",
                r.as_ref().len()
            )));
        }
        let edges = rows.iter().enumerate().flat_map(|(i, r)| {
            r.as_ref()
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(move |(j, _)| (i, j))
        });
        Self::new(u_count, v_count, edges)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn u_count(&self) -> usize {
        self.u_count
    }

    pub fn v_count(&self) -> usize {
        self.v_count
    }

    pub fn vertex_count(&self) -> usize {
        self.u_count + self.v_count
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Number of edges, the `m` of the efficacy formula.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Number of non-edges, the largest possible number of additions.
    pub fn non_edge_count(&self) -> usize {
        self.u_count * self.v_count - self.edge_count
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.v_count + j]
    }

    /// Edges in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let v = self.v_count;
        self.adj
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(move |(k, _)| (k / v, k % v))
    }

    /// Row-major 0/1 view.
    pub fn matrix(&self) -> Vec<Vec<bool>> {
        self.adj
            .chunks(self.v_count)
            .map(<[bool]>::to_vec)
            .collect()
    }

    /// Connected components as (U members, V members).
    pub fn components(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let (u, v) = (self.u_count, self.v_count);
        let mut seen = vec![false; u + v];
        let mut out = Vec::new();
        for start in 0..u + v {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            let (mut us, mut vs) = (Vec::new(), Vec::new());
            while let Some(x) = queue.pop_front() {
                if x < u {
                    us.push(x);
                    for j in 0..v {
                        if self.has_edge(x, j) && !seen[u + j] {
                            seen[u + j] = true;
                            queue.push_back(u + j);
                        }
                    }
                } else {
                    let j = x - u;
                    vs.push(j);
                    for (i, mark) in seen.iter_mut().enumerate().take(u) {
                        if !*mark && self.has_edge(i, j) {
                            *mark = true;
                            queue.push_back(i);
                        }
                    }
                }
            }
            us.sort_unstable();
            vs.sort_unstable();
            out.push((us, vs));
        }
        out
    }
}

/// Assignment of every vertex to a cluster, kept in canonical form.
///
/// Canonical form: a cluster whose members all lie in one part is split into
/// singletons, and ids are numbered by first appearance scanning `U` then `V`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Biclusterization {
    u_labels: Vec<usize>,
    v_labels: Vec<usize>,
}

/// One cluster seen as a matrix cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl Biclusterization {
    /// Canonicalizes arbitrary labels.
    pub fn from_labels(u_labels: &[usize], v_labels: &[usize]) -> Self {
        let all = || u_labels.iter().chain(v_labels.iter());
        let max = all().copied().max().map_or(0, |m| m + 1);
        let (mut in_u, mut in_v) = (vec![false; max], vec![false; max]);
        u_labels.iter().for_each(|&l| in_u[l] = true);
        v_labels.iter().for_each(|&l| in_v[l] = true);

        let mut remap: Vec<Option<usize>> = vec![None; max];
        let mut next = 0;
        let mut assign = |label: usize| -> usize {
            if in_u[label] && in_v[label] {
                *remap[label].get_or_insert_with(|| {
                    next += 1;
                    next - 1
                })
            } else {
                next += 1;
                next - 1
            }
        };
        let u: Vec<usize> = u_labels.iter().map(|&l| assign(l)).collect();
        let v: Vec<usize> = v_labels.iter().map(|&l| assign(l)).collect();
        Self {
            u_labels: u,
            v_labels: v,
        }
    }

    /// Every vertex in its own cluster.
    pub fn singletons(u_count: usize, v_count: usize) -> Self {
        Self {
            u_labels: (0..u_count).collect(),
            v_labels: (u_count..u_count + v_count).collect(),
        }
    }

    /// All vertices in one cluster.
    pub fn single_cluster(u_count: usize, v_count: usize) -> Self {
        Self::from_labels(&vec![0; u_count], &vec![0; v_count])
    }

    /// Rebuilds a clustering from a cell list; every vertex must occur once.
    pub fn from_cells(u_count: usize, v_count: usize, cells: &[Cell]) -> Result<Self> {
        let mut u = vec![None; u_count];
        let mut v = vec![None; v_count];
        for (c, cell) in cells.iter().enumerate() {
            for &r in &cell.rows {
                let slot = u.get_mut(r).ok_or_else(|| {
                    Error::DimensionMismatch(format!("row {r} out of range in cell {c}"))
                })?;
                if slot.replace(c).is_some() {
                    return Err(Error::DimensionMismatch(format!("row {r} appears twice")));
                }
            }
            for &k in &cell.cols {
                let slot = v.get_mut(k).ok_or_else(|| {
                    Error::DimensionMismatch(format!("column {k} out of range in cell {c}"))
                })?;
                if slot.replace(c).is_some() {
                    return Err(Error::DimensionMismatch(format!(
                        "column {k} appears twice"
                    )));
                }
            }
        }
        let collect = |labels: Vec<Option<usize>>, what: &str| -> Result<Vec<usize>> {
            labels
                .into_iter()
                .enumerate()
                .map(|(k, l)| {
                    l.ok_or_else(|| Error::DimensionMismatch(format!("{what} {k} is in no cell")))
                })
                .collect()
        };
        let u = collect(u, "row")?;
        let v = collect(v, "column")?;
        Ok(Self::from_labels(&u, &v))
    }

    pub fn u_labels(&self) -> &[usize] {
        &self.u_labels
    }

    pub fn v_labels(&self) -> &[usize] {
        &self.v_labels
    }

    pub fn u_count(&self) -> usize {
        self.u_labels.len()
    }

    pub fn v_count(&self) -> usize {
        self.v_labels.len()
    }

    pub fn cluster_count(&self) -> usize {
        self.u_labels
            .iter()
            .chain(&self.v_labels)
            .max()
            .map_or(0, |m| m + 1)
    }

    /// True when `u` and `v` share a cluster, i.e. the edited graph has edge `uv`.
    #[inline]
    pub fn together(&self, i: usize, j: usize) -> bool {
        self.u_labels[i] == self.v_labels[j]
    }

    fn check_dims(&self, instance: &BipartiteInstance) -> Result<()> {
        if self.u_count() != instance.u_count() || self.v_count() != instance.v_count() {
            return Err(Error::DimensionMismatch(format!(
                "clustering is {}x{}, instance is {}x{}",
                self.u_count(),
                self.v_count(),
                instance.u_count(),
                instance.v_count()
            )));
        }
        Ok(())
    }
}

/// Cells in cluster-id order; singletons appear as cells with one empty side.
pub fn cells_of(clustering: &Biclusterization) -> Vec<Cell> {
    let mut cells = vec![
        Cell {
            rows: Vec::new(),
            cols: Vec::new()
        };
        clustering.cluster_count()
    ];
    for (i, &l) in clustering.u_labels.iter().enumerate() {
        cells[l].rows.push(i);
    }
    for (j, &l) in clustering.v_labels.iter().enumerate() {
        cells[l].cols.push(j);
    }
    cells
}

/// Edge additions and deletions turning an instance into the bicluster graph
/// induced by `clustering`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EditSolution {
    pub clustering: Biclusterization,
    pub added: BTreeSet<(usize, usize)>,
    pub removed: BTreeSet<(usize, usize)>,
}

impl EditSolution {
    pub fn new(instance: &BipartiteInstance, clustering: Biclusterization) -> Result<Self> {
        clustering.check_dims(instance)?;
        let mut added = BTreeSet::new();
        let mut removed = BTreeSet::new();
        for i in 0..instance.u_count() {
            for j in 0..instance.v_count() {
                match (instance.has_edge(i, j), clustering.together(i, j)) {
                    (true, false) => {
                        removed.insert((i, j));
                    }
                    (false, true) => {
                        added.insert((i, j));
                    }
                    _ => {}
                }
            }
        }
        Ok(Self {
            clustering,
            added,
            removed,
        })
    }

    /// Number of additions.
    pub fn a(&self) -> usize {
        self.added.len()
    }

    /// Number of deletions.
    pub fn d(&self) -> usize {
        self.removed.len()
    }

    pub fn total(&self) -> usize {
        self.a() + self.d()
    }

    /// The edited graph.
    pub fn apply(&self, instance: &BipartiteInstance) -> BipartiteInstance {
        let edges = instance
            .edges()
            .filter(|e| !self.removed.contains(e))
            .chain(self.added.iter().copied())
            .collect::<Vec<_>>();
        let out = BipartiteInstance::new(instance.u_count(), instance.v_count(), edges)
            .expect("edits stay within the instance");
        match instance.name() {
            Some(n) => out.with_name(n),
            None => out,
        }
    }
}

/// Additions `a` and deletions `d` needed to realize `clustering`.
pub fn edit_cost(
    instance: &BipartiteInstance,
    clustering: &Biclusterization,
) -> Result<(usize, usize)> {
    clustering.check_dims(instance)?;
    let (mut a, mut d) = (0, 0);
    for i in 0..instance.u_count() {
        for j in 0..instance.v_count() {
            match (instance.has_edge(i, j), clustering.together(i, j)) {
                (true, false) => d += 1,
                (false, true) => a += 1,
                _ => {}
            }
        }
    }
    Ok((a, d))
}

/// True iff every connected component is a complete bipartite graph.
pub fn is_bicluster_graph(instance: &BipartiteInstance) -> bool {
    instance.components().iter().all(|(us, vs)| {
        us.iter()
            .all(|&i| vs.iter().all(|&j| instance.has_edge(i, j)))
    })
}

/// Grouping efficacy `(m - d) / (m + a)` of a clustering.
pub fn grouping_efficacy(
    instance: &BipartiteInstance,
    clustering: &Biclusterization,
) -> Result<Efficacy> {
    let m = instance.edge_count();
    if m == 0 {
        return Err(Error::NoEdges);
    }
    let (a, d) = edit_cost(instance, clustering)?;
    Ok(Efficacy::from_counts(m as u64, a as u64, d as u64))
}

/// Every cluster holding a row has at least `min_cols` columns, and every
/// cluster holding a column has at least `min_rows` rows.
pub fn check_size_constraints(
    instance: &BipartiteInstance,
    clustering: &Biclusterization,
    min_cols: usize,
    min_rows: usize,
) -> bool {
    if clustering.check_dims(instance).is_err() {
        return false;
    }
    cells_of(clustering).iter().all(|c| {
        (c.rows.is_empty() || c.cols.len() >= min_cols)
            && (c.cols.is_empty() || c.rows.len() >= min_rows)
    })
}

/// Exact grouping efficacy. The fraction is kept as computed (`8/10` stays
/// `8/10`); equality and ordering compare values by cross-multiplication.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Efficacy {
    pub num: u64,
    pub den: u64,
}

impl Efficacy {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num > den {
            return Err(Error::InvalidArgument(format!(
                "efficacy {num}/{den} is not in [0, 1]"
            )));
        }
        Ok(Self { num, den })
    }

    /// `(m - d) / (m + a)`. Panics when `d > m` or `m == 0`.
    pub fn from_counts(m: u64, a: u64, d: u64) -> Self {
        assert!(
            m > 0 && d <= m,
            "efficacy needs 0 < m and d <= m (m={m}, d={d})"
        );
        Self {
            num: m - d,
            den: m + a,
        }
    }

    pub const ONE: Self = Self { num: 1, den: 1 };
    pub const ZERO: Self = Self { num: 0, den: 1 };

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Lowest-terms copy.
    pub fn reduced(self) -> Self {
        let g = self.num.gcd(&self.den).max(1);
        Self {
            num: self.num / g,
            den: self.den / g,
        }
    }

    /// Value as a percentage rounded to two decimals, for display.
    pub fn percent(self) -> f64 {
        (self.to_f64() * 10000.0).round() / 100.0
    }
}

impl PartialEq for Efficacy {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Efficacy {}

impl Hash for Efficacy {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let r = self.reduced();
        r.num.hash(state);
        r.den.hash(state);
    }
}

impl PartialOrd for Efficacy {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Efficacy {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl fmt::Display for Efficacy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}
