//! Exact maximization of grouping efficacy.
//!
//! Two methods are provided. [`solve_iterative`] walks the total edit count
//! upward from the size-constrained editing optimum, solving one "exactly
//! `lambda` edits, fewest deletions" model per step until the upper bound
//! `m / (m + lambda)` meets the best efficacy found. [`solve_linear`] solves a
//! single model with one binary per admissible `(d, a)` pair.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::bnc::{
    build_bgep, build_bgeps, build_bgeps_lambda, build_mcfp_linear, root_relaxation_bound, solve,
    BncConfig, MilpResult, MilpStatus,
};
use crate::error::{Error, Result};
use crate::graph::{Biclusterization, BipartiteInstance, EditSolution, Efficacy};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum McfpMethod {
    Iterative,
    Linear,
}

impl McfpMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Iterative => "iterative",
            Self::Linear => "linear",
        }
    }
}

/// Lower and upper efficacy bounds after one step of the iterative method.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundStep {
    pub lambda: Option<usize>,
    pub lb: Efficacy,
    pub ub: Efficacy,
}

#[derive(Clone, Debug)]
pub struct McfpResult {
    pub efficacy: Efficacy,
    pub solution: EditSolution,
    pub a: usize,
    pub d: usize,
    pub method: McfpMethod,
    /// False when a limit stopped the search before optimality was proven.
    pub proven: bool,
    /// Best known upper bound on the efficacy.
    pub upper_bound: Efficacy,
    /// Optimal (or best found) total edits of the size-constrained editing model.
    pub bgeps_edits: usize,
    /// Iterative method only: bounds after initialization and after each step.
    pub history: Vec<BoundStep>,
    pub iterations: usize,
    pub nodes: usize,
    pub cuts: usize,
    pub wall_time: Duration,
}

/// `lb = (m - d*) / (m + a*)` and `ub = m / (m + a* + d*)`.
pub fn efficacy_bounds(m: u64, a_star: u64, d_star: u64) -> Result<(Efficacy, Efficacy)> {
    if m == 0 {
        return Err(Error::NoEdges);
    }
    if d_star > m {
        return Err(Error::InvalidArgument(format!(
            "{d_star} deletions exceed {m} edges"
        )));
    }
    Ok((
        Efficacy::from_counts(m, a_star, d_star),
        Efficacy::from_counts(m, a_star + d_star, 0),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FEntry {
    pub d: usize,
    pub a: usize,
    pub c: Efficacy,
}

/// Admissible `(deletions, additions)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FSet {
    entries: Vec<FEntry>,
}

impl FSet {
    pub fn entries(&self) -> &[FEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, d: usize, a: usize) -> bool {
        self.entries.iter().any(|e| e.d == d && e.a == a)
    }
}

/// All `(d, a)` with `d <= m`, `a <= max_additions`, `(m - d)/(m + a) >= l_c`
/// and `d + a >= l_b`, ordered by `d` then `a`.
pub fn build_f_set(m: usize, max_additions: usize, l_c: Efficacy, l_b: usize) -> Result<FSet> {
    if m == 0 {
        return Err(Error::NoEdges);
    }
    if l_c > Efficacy::ONE {
        return Err(Error::InvalidArgument(format!(
            "efficacy bound {l_c} exceeds 1"
        )));
    }
    let mut entries = Vec::new();
    for d in 0..=m {
        for a in 0..=max_additions {
            let c = Efficacy::from_counts(m as u64, a as u64, d as u64);
            if c < l_c {
                // c decreases in a
                break;
            }
            if d + a >= l_b {
                entries.push(FEntry { d, a, c });
            }
        }
    }
    if entries.is_empty() {
        return Err(Error::EmptyFSet);
    }
    Ok(FSet { entries })
}

fn remaining<T>(config: &BncConfig<T>, start: Instant) -> Option<Duration> {
    config.time_limit.map(|t| t.saturating_sub(start.elapsed()))
}

fn timed<T: Scalar>(config: &BncConfig<T>, start: Instant) -> Option<BncConfig<T>> {
    let mut c = config.clone();
    match remaining(config, start) {
        Some(r) if r.is_zero() => None,
        r => {
            c.time_limit = r;
            Some(c)
        }
    }
}

struct Seed {
    solution: EditSolution,
    proven: bool,
    nodes: usize,
    cuts: usize,
}

/// Size-constrained editing optimum, falling back to the one-cluster solution
/// when a limit leaves no incumbent.
fn seed<T: Scalar>(
    instance: &BipartiteInstance,
    min_cols: usize,
    min_rows: usize,
    config: &BncConfig<T>,
    start: Instant,
) -> Result<Seed> {
    let model = build_bgeps::<T>(instance, min_cols, min_rows)?;
    let fallback = || {
        EditSolution::new(
            instance,
            Biclusterization::single_cluster(instance.u_count(), instance.v_count()),
        )
    };
    let Some(cfg) = timed(config, start) else {
        return Ok(Seed {
            solution: fallback()?,
            proven: false,
            nodes: 0,
            cuts: 0,
        });
    };
    let r = solve(&model, &cfg)?;
    let solution = match (r.status, r.solution) {
        (_, Some(s)) => s,
        (MilpStatus::Infeasible, None) => return Err(Error::NoFeasibleClustering),
        (_, None) => fallback()?,
    };
    Ok(Seed {
        solution,
        proven: r.status == MilpStatus::Optimal,
        nodes: r.nodes,
        cuts: r.cuts,
    })
}

fn check_instance(instance: &BipartiteInstance) -> Result<u64> {
    match instance.edge_count() {
        0 => Err(Error::NoEdges),
        m => Ok(m as u64),
    }
}

/// Iterative exact method over the total edit count.
pub fn solve_iterative<T: Scalar>(
    instance: &BipartiteInstance,
    min_cols: usize,
    min_rows: usize,
    config: &BncConfig<T>,
) -> Result<McfpResult> {
    let start = Instant::now();
    let m = check_instance(instance)?;
    let seed = seed(instance, min_cols, min_rows, config, start)?;
    let (a0, d0) = (seed.solution.a(), seed.solution.d());
    let base = a0 + d0;
    let (mut lb, mut ub) = efficacy_bounds(m, a0 as u64, d0 as u64)?;
    let mut best = seed.solution;
    let mut proven = seed.proven;
    let (mut nodes, mut cuts) = (seed.nodes, seed.cuts);
    let mut u_opt = d0;
    let mut history = vec![BoundStep {
        lambda: None,
        lb,
        ub,
    }];
    let max_edits = instance.u_count() * instance.v_count();
    let mut cont = 0;
    // a limit-stopped seed is not an optimum, so its bounds do not hold
    while proven && ub > lb {
        let lambda = base + cont;
        if lambda > max_edits {
            // every edit count has been explored
            ub = lb;
            history.push(BoundStep {
                lambda: Some(lambda),
                lb,
                ub,
            });
            break;
        }
        let Some(cfg) = timed(config, start) else {
            proven = false;
            break;
        };
        let model = build_bgeps_lambda::<T>(instance, min_cols, min_rows, lambda, u_opt)?;
        let r: MilpResult<T> = solve(&model, &cfg)?;
        nodes += r.nodes;
        cuts += r.cuts;
        if let Some(sol) = r.solution {
            let (a, d) = (sol.a(), sol.d());
            u_opt = u_opt.min(d);
            let e = Efficacy::from_counts(m, a as u64, d as u64);
            if e > lb {
                lb = e;
                best = sol;
            }
        }
        if r.status == MilpStatus::LimitReached {
            proven = false;
            break;
        }
        ub = Efficacy::from_counts(m, lambda as u64, 0);
        cont += 1;
        history.push(BoundStep {
            lambda: Some(lambda),
            lb,
            ub,
        });
    }
    let (a, d) = (best.a(), best.d());
    Ok(McfpResult {
        efficacy: Efficacy::from_counts(m, a as u64, d as u64),
        solution: best,
        a,
        d,
        method: McfpMethod::Iterative,
        proven,
        upper_bound: if proven { lb } else { ub },
        bgeps_edits: base,
        history,
        iterations: cont,
        nodes,
        cuts,
        wall_time: start.elapsed(),
    })
}

/// Single-model exact method over admissible `(d, a)` pairs.
pub fn solve_linear<T: Scalar>(
    instance: &BipartiteInstance,
    min_cols: usize,
    min_rows: usize,
    config: &BncConfig<T>,
) -> Result<McfpResult> {
    let start = Instant::now();
    let m = check_instance(instance)?;
    let seed = seed(instance, min_cols, min_rows, config, start)?;
    let (a0, d0) = (seed.solution.a(), seed.solution.d());
    let (l_c, _) = efficacy_bounds(m, a0 as u64, d0 as u64)?;
    let (mut nodes, mut cuts) = (seed.nodes, seed.cuts);
    let finish =
        |solution: EditSolution, proven: bool, upper: Efficacy, nodes: usize, cuts: usize| {
            let (a, d) = (solution.a(), solution.d());
            McfpResult {
                efficacy: Efficacy::from_counts(m, a as u64, d as u64),
                solution,
                a,
                d,
                method: McfpMethod::Linear,
                proven,
                upper_bound: upper,
                bgeps_edits: a0 + d0,
                history: Vec::new(),
                iterations: 0,
                nodes,
                cuts,
                wall_time: start.elapsed(),
            }
        };
    if !seed.proven {
        return Ok(finish(seed.solution, false, Efficacy::ONE, nodes, cuts));
    }
    let l_b = match timed(config, start) {
        Some(cfg) => match root_relaxation_bound(&build_bgep::<T>(instance), &cfg)? {
            Some(v) => (v - T::lit(1e-6))
                .ceil()
                .max(T::zero())
                .to_usize()
                .unwrap_or(0),
            None => 0,
        },
        None => return Ok(finish(seed.solution, false, Efficacy::ONE, nodes, cuts)),
    };
    let f_set = build_f_set(instance.edge_count(), instance.non_edge_count(), l_c, l_b)?;
    debug_assert!(f_set.contains(d0, a0));
    let Some(cfg) = timed(config, start) else {
        return Ok(finish(seed.solution, false, Efficacy::ONE, nodes, cuts));
    };
    let model = build_mcfp_linear::<T>(instance, min_cols, min_rows, &f_set)?;
    let r = solve(&model, &cfg)?;
    nodes += r.nodes;
    cuts += r.cuts;
    let proven = r.status == MilpStatus::Optimal;
    let solution = match r.solution {
        Some(s) => {
            let (d, a) = r.choice.expect("linearized model selects one pair");
            if (s.d(), s.a()) != (d, a) {
                return Err(Error::InvalidArgument(format!(
                    "selected pair (d={d}, a={a}) disagrees with decoded edits (d={}, a={})",
                    s.d(),
                    s.a()
                )));
            }
            let seed_e = Efficacy::from_counts(m, a0 as u64, d0 as u64);
            if Efficacy::from_counts(m, a as u64, d as u64) >= seed_e {
                s
            } else {
                seed.solution
            }
        }
        None if r.status == MilpStatus::Infeasible => {
            return Err(Error::InvalidArgument(
                "linearized model is infeasible although the seed solution satisfies it".into(),
            ))
        }
        None => seed.solution,
    };
    let upper = if proven {
        let (a, d) = (solution.a() as u64, solution.d() as u64);
        Efficacy::from_counts(m, a, d)
    } else {
        // best bound of a maximization is an upper bound on the selected cost
        f_set
            .entries()
            .iter()
            .map(|e| e.c)
            .filter(|c| c.to_f64() <= r.best_bound.to_f64().unwrap_or(1.0) + 1e-9)
            .max()
            .unwrap_or(Efficacy::ONE)
    };
    Ok(finish(solution, proven, upper, nodes, cuts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::five_by_four;
    use crate::graph::grouping_efficacy;

    fn eff(num: u64, den: u64) -> Efficacy {
        Efficacy::new(num, den).unwrap()
    }

    #[test]
    fn efficacy_bound_examples() {
        assert_eq!(efficacy_bounds(8, 1, 1).unwrap(), (eff(7, 9), eff(8, 10)));
        assert_eq!(efficacy_bounds(8, 2, 0).unwrap(), (eff(8, 10), eff(8, 10)));
        assert_eq!(
            efficacy_bounds(5, 0, 0).unwrap(),
            (Efficacy::ONE, Efficacy::ONE)
        );
        assert!(efficacy_bounds(0, 1, 0).is_err());
    }

    #[test]
    fn f_set_examples() {
        let f = build_f_set(8, 20, eff(7, 9), 2).unwrap();
        assert!(f.contains(0, 2) && f.contains(1, 1));
        assert!(!f.contains(3, 0));
        for e in f.entries() {
            assert!(e.c >= eff(7, 9) && e.d + e.a >= 2);
        }
        let one = build_f_set(8, 20, Efficacy::ONE, 0).unwrap();
        assert_eq!(
            one.entries(),
            &[FEntry {
                d: 0,
                a: 0,
                c: Efficacy::ONE
            }]
        );
        assert_eq!(build_f_set(8, 2, eff(1, 100), 11), Err(Error::EmptyFSet));
    }

    #[test]
    fn perfect_instance_needs_no_iteration() {
        let g = BipartiteInstance::new(2, 2, [(0, 0), (1, 1)]).unwrap();
        let r = solve_iterative::<f64>(&g, 0, 0, &BncConfig::default()).unwrap();
        assert_eq!(r.efficacy, Efficacy::ONE);
        assert_eq!(r.iterations, 0);
        assert!(r.proven);
        let l = solve_linear::<f64>(&g, 0, 0, &BncConfig::default()).unwrap();
        assert_eq!(l.efficacy, Efficacy::ONE);
    }

    #[test]
    fn five_by_four_methods_agree() {
        let g = five_by_four();
        let it = solve_iterative::<f64>(&g, 0, 0, &BncConfig::default()).unwrap();
        let li = solve_linear::<f64>(&g, 0, 0, &BncConfig::default()).unwrap();
        assert_eq!(it.efficacy, li.efficacy);
        assert!(it.proven && li.proven);
        assert_eq!(
            grouping_efficacy(&g, &it.solution.clustering).unwrap(),
            it.efficacy
        );
        for w in it.history.windows(2) {
            assert!(w[1].ub <= w[0].ub && w[1].lb >= w[0].lb);
        }
        assert!(it.history.last().unwrap().ub <= it.history.last().unwrap().lb);
    }

    #[test]
    fn no_edges_is_rejected() {
        let g = BipartiteInstance::new(2, 2, []).unwrap();
        assert_eq!(
            solve_iterative::<f64>(&g, 0, 0, &BncConfig::default()).unwrap_err(),
            Error::NoEdges
        );
    }

    #[test]
    fn deletions_lower_efficacy_at_fixed_edit_count() {
        for m in 1..=100u64 {
            for lambda in 0..=50u64 {
                for d in 1..=m.min(lambda) {
                    let prev = Efficacy::from_counts(m, lambda - (d - 1), d - 1);
                    let cur = Efficacy::from_counts(m, lambda - d, d);
                    assert!(cur < prev, "m={m} lambda={lambda} d={d}");
                }
            }
        }
    }
}
