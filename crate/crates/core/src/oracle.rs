//! Brute-force reference solvers over every biclusterization of a small
//! instance.
//!
//! Set partitions of the combined vertex sequence (`U` then `V`) are
//! enumerated as restricted growth strings. A partition with a block of two
//! or more vertices from a single part describes the same edited graph as the
//! partition with that block split into singletons, so only partitions
//! without such blocks are turned into clusterings; each clustering is then
//! produced exactly once.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::{
    check_size_constraints, edit_cost, Biclusterization, BipartiteInstance, EditSolution, Efficacy,
};

/// Largest `u_count + v_count` accepted by the brute-force solvers.
pub const SIZE_GUARD: usize = 12;

/// Restricted growth strings of length `n`: `a[0] = 0` and
/// `a[k] <= 1 + max(a[..k])`.
#[derive(Clone, Debug)]
pub struct PartitionIterator {
    labels: Vec<usize>,
    /// `prefix_max[k] = max(a[..=k])`
    prefix_max: Vec<usize>,
    started: bool,
    done: bool,
}

impl PartitionIterator {
    pub fn new(n: usize) -> Self {
        Self {
            labels: vec![0; n],
            prefix_max: vec![0; n],
            started: false,
            done: false,
        }
    }

    /// Advances and borrows the next partition's block labels.
    pub fn next_labels(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.labels);
        }
        let n = self.labels.len();
        let Some(k) = (1..n)
            .rev()
            .find(|&k| self.labels[k] <= self.prefix_max[k - 1])
        else {
            self.done = true;
            return None;
        };
        self.labels[k] += 1;
        self.prefix_max[k] = self.prefix_max[k - 1].max(self.labels[k]);
        for t in (k + 1)..n {
            self.labels[t] = 0;
            self.prefix_max[t] = self.prefix_max[k];
        }
        Some(&self.labels)
    }
}

impl Iterator for PartitionIterator {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        self.next_labels().map(<[usize]>::to_vec)
    }
}

/// Calls `visit` once per distinct biclusterization of a `u x v` vertex set.
pub fn for_each_clustering(
    u_count: usize,
    v_count: usize,
    mut visit: impl FnMut(Biclusterization),
) {
    let n = u_count + v_count;
    let mut it = PartitionIterator::new(n);
    let mut size = vec![0usize; n];
    let mut has_u = vec![false; n];
    let mut has_v = vec![false; n];
    while let Some(labels) = it.next_labels() {
        size.iter_mut().for_each(|s| *s = 0);
        has_u.iter_mut().for_each(|s| *s = false);
        has_v.iter_mut().for_each(|s| *s = false);
        for (x, &l) in labels.iter().enumerate() {
            size[l] += 1;
            if x < u_count {
                has_u[l] = true;
            } else {
                has_v[l] = true;
            }
        }
        let canonical = (0..n).all(|b| size[b] < 2 || (has_u[b] && has_v[b]));
        if canonical {
            visit(Biclusterization::from_labels(
                &labels[..u_count],
                &labels[u_count..],
            ));
        }
    }
}

fn guard(instance: &BipartiteInstance) -> Result<()> {
    let n = instance.vertex_count();
    if n > SIZE_GUARD {
        return Err(Error::SizeGuard {
            vertices: n,
            limit: SIZE_GUARD,
        });
    }
    Ok(())
}

/// Minimum edit count over clusterings accepted by `keep`.
pub fn brute_force_bgep_filtered(
    instance: &BipartiteInstance,
    mut keep: impl FnMut(&Biclusterization) -> bool,
) -> Result<(usize, EditSolution)> {
    guard(instance)?;
    let mut best: Option<(usize, Biclusterization)> = None;
    for_each_clustering(instance.u_count(), instance.v_count(), |c| {
        if !keep(&c) {
            return;
        }
        let (a, d) = edit_cost(instance, &c).expect("dimensions match");
        if best.as_ref().is_none_or(|(b, _)| a + d < *b) {
            best = Some((a + d, c));
        }
    });
    let (cost, c) = best.ok_or(Error::NoFeasibleClustering)?;
    Ok((cost, EditSolution::new(instance, c)?))
}

/// Minimum edit count over all clusterings.
pub fn brute_force_bgep(instance: &BipartiteInstance) -> Result<(usize, EditSolution)> {
    brute_force_bgep_filtered(instance, |_| true)
}

/// Minimum edit count under per-vertex cluster size minima.
pub fn brute_force_bgeps(
    instance: &BipartiteInstance,
    min_cols: usize,
    min_rows: usize,
) -> Result<(usize, EditSolution)> {
    brute_force_bgep_filtered(instance, |c| {
        check_size_constraints(instance, c, min_cols, min_rows)
    })
}

/// Maximum grouping efficacy under size minima. Ties go to fewer edits, then
/// to the lexicographically smaller label vector.
pub fn brute_force_mcfp(
    instance: &BipartiteInstance,
    min_cols: usize,
    min_rows: usize,
) -> Result<(Efficacy, EditSolution)> {
    guard(instance)?;
    let m = instance.edge_count() as u64;
    if m == 0 {
        return Err(Error::NoEdges);
    }
    let mut best: Option<(Efficacy, usize, Biclusterization)> = None;
    for_each_clustering(instance.u_count(), instance.v_count(), |c| {
        if !check_size_constraints(instance, &c, min_cols, min_rows) {
            return;
        }
        let (a, d) = edit_cost(instance, &c).expect("dimensions match");
        let e = Efficacy::from_counts(m, a as u64, d as u64);
        let better = match &best {
            None => true,
            Some((be, bt, bc)) => {
                e.cmp(be)
                    .then_with(|| bt.cmp(&(a + d)))
                    .then_with(|| bc.cmp(&c))
                    == Ordering::Greater
            }
        };
        if better {
            best = Some((e, a + d, c));
        }
    });
    let (e, _, c) = best.ok_or(Error::NoFeasibleClustering)?;
    Ok((e, EditSolution::new(instance, c)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::{five_by_four, lone_p4};
    use std::collections::HashSet;

    fn bell(n: usize) -> u64 {
        // Bell triangle
        let mut row = vec![1u64];
        for _ in 0..n {
            let mut next = vec![*row.last().unwrap()];
            for &x in &row {
                next.push(next.last().unwrap() + x);
            }
            row = next;
        }
        row[0]
    }

    #[test]
    fn raw_count_is_bell_number() {
        assert_eq!((0..=5).map(bell).collect::<Vec<_>>(), [1, 1, 2, 5, 15, 52]);
        for n in 1..=10 {
            assert_eq!(PartitionIterator::new(n).count() as u64, bell(n), "n = {n}");
        }
    }

    #[test]
    fn strings_are_restricted_growth() {
        for labels in PartitionIterator::new(6) {
            let mut max = 0;
            assert_eq!(labels[0], 0);
            for &l in &labels[1..] {
                assert!(l <= max + 1);
                max = max.max(l);
            }
        }
    }

    #[test]
    fn clusterings_are_distinct() {
        let mut seen = HashSet::new();
        let mut count = 0;
        for_each_clustering(3, 3, |c| {
            count += 1;
            assert!(seen.insert(c));
        });
        assert!(count > 0 && count < bell(6) as usize);
    }

    #[test]
    fn lone_p4_and_five_by_four() {
        assert_eq!(brute_force_bgep(&lone_p4()).unwrap().0, 1);
        assert_eq!(brute_force_bgep(&five_by_four()).unwrap().0, 2);
        assert_eq!(
            brute_force_bgep(&BipartiteInstance::new(3, 2, []).unwrap())
                .unwrap()
                .0,
            0
        );
    }

    #[test]
    fn efficacy_oracle() {
        let k =
            BipartiteInstance::new(2, 3, (0..2).flat_map(|i| (0..3).map(move |j| (i, j)))).unwrap();
        assert_eq!(brute_force_mcfp(&k, 0, 0).unwrap().0, Efficacy::ONE);
        let (e, sol) = brute_force_mcfp(&five_by_four(), 0, 0).unwrap();
        assert_eq!(e, Efficacy::new(8, 10).unwrap());
        assert_eq!((sol.a(), sol.d()), (2, 0));
    }

    #[test]
    fn guards() {
        let big = BipartiteInstance::new(7, 6, [(0, 0)]).unwrap();
        assert!(matches!(
            brute_force_bgep(&big),
            Err(Error::SizeGuard { vertices: 13, .. })
        ));
        let one = BipartiteInstance::new(1, 1, [(0, 0)]).unwrap();
        assert_eq!(
            brute_force_mcfp(&one, 2, 2).unwrap_err(),
            Error::NoFeasibleClustering
        );
        let none = BipartiteInstance::new(1, 1, []).unwrap();
        assert_eq!(brute_force_mcfp(&none, 0, 0).unwrap_err(), Error::NoEdges);
    }
}
