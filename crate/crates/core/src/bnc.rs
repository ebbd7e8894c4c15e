//! Branch-and-cut over 0/1 edit models with the P4 family as lazy rows.
//!
//! Models are built over `y_ij` (edge `ij` present after editing), optionally
//! extended by a block of choice variables `x_da` for the linearized efficacy
//! objective. The relaxation starts without P4 rows; each node runs cutting
//! rounds with the configured separator and every integral candidate is
//! checked by exact separation before it may become the incumbent.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet};
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::graph::{Biclusterization, BipartiteInstance, EditSolution, Efficacy};
use crate::lp::{LinearProgram, LpError, LpStatus, Relation, Row, Sense, SimplexSolver};
use crate::mcfp::FSet;
use crate::preprocess::PreprocessResult;
use crate::scalar::Scalar;
use crate::separation::{separate_dp, separate_exhaustive, FractionalPoint, P4Cut};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    Bgep,
    Bgeps {
        min_cols: usize,
        min_rows: usize,
    },
    BgepsLambda {
        min_cols: usize,
        min_rows: usize,
        lambda: usize,
        u_opt: usize,
    },
    McfpLinear {
        min_cols: usize,
        min_rows: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowKind {
    /// Row vertex needs `min_cols` partners.
    MinCols,
    /// Column vertex needs `min_rows` partners.
    MinRows,
    /// Exactly `lambda` edits.
    EditBudget,
    /// Fewer than `u_opt` deletions.
    DeletionCap,
    /// One `x_da` is chosen.
    Choice,
    /// `sum d x_da` equals the deletions.
    DeletionLink,
    /// `sum a x_da` equals the additions.
    AdditionLink,
    /// Preprocessing pair cut.
    PairCut,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StaticRow<T> {
    pub kind: RowKind,
    pub row: Row<T>,
}

/// A choice variable `x_da` with its exact efficacy cost.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChoiceVar {
    pub d: usize,
    pub a: usize,
    pub cost: Efficacy,
}

/// An integer model over the edit variables of one instance.
#[derive(Clone, Debug)]
pub struct ModelSpec<T> {
    instance: BipartiteInstance,
    kind: ModelKind,
    sense: Sense,
    objective: Vec<T>,
    offset: T,
    lower: Vec<T>,
    upper: Vec<T>,
    choices: Vec<ChoiceVar>,
    rows: Vec<StaticRow<T>>,
    lazy_p4: bool,
    integral_objective: bool,
    trivially_infeasible: bool,
}

impl<T: Scalar> ModelSpec<T> {
    pub fn instance(&self) -> &BipartiteInstance {
        &self.instance
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    pub fn y_count(&self) -> usize {
        self.instance.u_count() * self.instance.v_count()
    }

    pub fn var_count(&self) -> usize {
        self.objective.len()
    }

    #[inline]
    pub fn y_var(&self, i: usize, j: usize) -> usize {
        i * self.instance.v_count() + j
    }

    pub fn choices(&self) -> &[ChoiceVar] {
        &self.choices
    }

    pub fn rows(&self) -> &[StaticRow<T>] {
        &self.rows
    }

    pub fn objective(&self) -> &[T] {
        &self.objective
    }

    pub fn offset(&self) -> T {
        self.offset
    }

    pub fn bounds(&self, var: usize) -> (T, T) {
        (self.lower[var], self.upper[var])
    }

    pub fn lazy_p4(&self) -> bool {
        self.lazy_p4
    }

    pub fn is_trivially_infeasible(&self) -> bool {
        self.trivially_infeasible
    }

    /// Objective of a full assignment, offset included.
    pub fn evaluate(&self, values: &[T]) -> T {
        self.objective
            .iter()
            .zip(values)
            .fold(self.offset, |acc, (&c, &v)| acc + c * v)
    }

    fn push_row(&mut self, kind: RowKind, coefs: Vec<(usize, T)>, relation: Relation, rhs: T) {
        self.rows.push(StaticRow {
            kind,
            row: Row::new(coefs, relation, rhs),
        });
    }

    fn edge_terms(&self, on_edge: T, off_edge: T) -> Vec<(usize, T)> {
        let g = &self.instance;
        let mut out = Vec::new();
        for i in 0..g.u_count() {
            for j in 0..g.v_count() {
                let c = if g.has_edge(i, j) { on_edge } else { off_edge };
                if c != T::zero() {
                    out.push((self.y_var(i, j), c));
                }
            }
        }
        out
    }

    /// Fixes variables to zero and adds pair cuts. Only sound for the plain
    /// editing objective, so other model kinds are rejected.
    pub fn apply_preprocess(&mut self, pre: &PreprocessResult) -> Result<()> {
        if self.kind != ModelKind::Bgep {
            return Err(Error::InvalidArgument(
                "preprocessing applies to the unrestricted editing model only".into(),
            ));
        }
        for &(i, j) in &pre.fixed_zero {
            let v = self.y_var(i, j);
            self.lower[v] = T::zero();
            self.upper[v] = T::zero();
        }
        for cut in &pre.pair_cuts {
            let [(a, b), (c, d)] = cut.vars();
            let coefs = vec![(self.y_var(a, b), T::one()), (self.y_var(c, d), T::one())];
            self.push_row(RowKind::PairCut, coefs, Relation::Le, T::one());
        }
        Ok(())
    }

    /// The continuous relaxation with static rows only.
    pub fn relaxation(&self) -> Result<LinearProgram<T>> {
        let lp = LinearProgram::new(
            self.sense,
            self.objective.clone(),
            self.lower.clone(),
            self.upper.clone(),
        )?;
        Ok(lp.with_rows(self.rows.iter().map(|r| r.row.clone()))?)
    }
}

fn base_model<T: Scalar>(instance: &BipartiteInstance, kind: ModelKind) -> ModelSpec<T> {
    let n = instance.u_count() * instance.v_count();
    let mut model = ModelSpec {
        instance: instance.clone(),
        kind,
        sense: Sense::Minimize,
        objective: vec![T::zero(); n],
        offset: T::from_count(instance.edge_count()),
        lower: vec![T::zero(); n],
        upper: vec![T::one(); n],
        choices: Vec::new(),
        rows: Vec::new(),
        lazy_p4: true,
        integral_objective: true,
        trivially_infeasible: false,
    };
    // deletions + additions = m - sum_+ y + sum_- y
    for (v, c) in model.edge_terms(-T::one(), T::one()) {
        model.objective[v] = c;
    }
    model
}

fn add_size_rows<T: Scalar>(
    model: &mut ModelSpec<T>,
    min_cols: usize,
    min_rows: usize,
) -> Result<()> {
    let (u, v) = (model.instance.u_count(), model.instance.v_count());
    if min_cols > v || min_rows > u {
        return Err(Error::InfeasibleMinima {
            min_cols,
            min_rows,
            u_count: u,
            v_count: v,
        });
    }
    if min_cols > 0 {
        for i in 0..u {
            let coefs = (0..v).map(|j| (model.y_var(i, j), T::one())).collect();
            model.push_row(
                RowKind::MinCols,
                coefs,
                Relation::Ge,
                T::from_count(min_cols),
            );
        }
    }
    if min_rows > 0 {
        for j in 0..v {
            let coefs = (0..u).map(|i| (model.y_var(i, j), T::one())).collect();
            model.push_row(
                RowKind::MinRows,
                coefs,
                Relation::Ge,
                T::from_count(min_rows),
            );
        }
    }
    Ok(())
}

/// Minimum number of edge edits.
pub fn build_bgep<T: Scalar>(instance: &BipartiteInstance) -> ModelSpec<T> {
    base_model(instance, ModelKind::Bgep)
}

/// Minimum edits with every row vertex clustered with at least `min_cols`
/// columns and every column vertex with at least `min_rows` rows.
pub fn build_bgeps<T: Scalar>(
    instance: &BipartiteInstance,
    min_cols: usize,
    min_rows: usize,
) -> Result<ModelSpec<T>> {
    let mut model = base_model(instance, ModelKind::Bgeps { min_cols, min_rows });
    add_size_rows(&mut model, min_cols, min_rows)?;
    Ok(model)
}

/// Exactly `lambda` edits, fewer than `u_opt` deletions, deletions minimized.
pub fn build_bgeps_lambda<T: Scalar>(
    instance: &BipartiteInstance,
    min_cols: usize,
    min_rows: usize,
    lambda: usize,
    u_opt: usize,
) -> Result<ModelSpec<T>> {
    let kind = ModelKind::BgepsLambda {
        min_cols,
        min_rows,
        lambda,
        u_opt,
    };
    let mut model = base_model(instance, kind);
    add_size_rows(&mut model, min_cols, min_rows)?;
    let m = T::from_count(instance.edge_count());
    // deletions = m - sum_+ y
    model.objective = vec![T::zero(); model.y_count()];
    for (v, c) in model.edge_terms(-T::one(), T::zero()) {
        model.objective[v] = c;
    }
    let budget = model.edge_terms(-T::one(), T::one());
    model.push_row(
        RowKind::EditBudget,
        budget,
        Relation::Eq,
        T::from_count(lambda) - m,
    );
    if u_opt == 0 {
        model.trivially_infeasible = true;
    } else {
        // m - sum_+ y <= u_opt - 1
        let kept = model.edge_terms(T::one(), T::zero());
        model.push_row(
            RowKind::DeletionCap,
            kept,
            Relation::Ge,
            m - T::from_count(u_opt - 1),
        );
    }
    Ok(model)
}

/// Linearized efficacy model: one `x_da` per admissible `(d, a)` pair.
pub fn build_mcfp_linear<T: Scalar>(
    instance: &BipartiteInstance,
    min_cols: usize,
    min_rows: usize,
    f_set: &FSet,
) -> Result<ModelSpec<T>> {
    if f_set.entries().is_empty() {
        return Err(Error::EmptyFSet);
    }
    let mut model = base_model(instance, ModelKind::McfpLinear { min_cols, min_rows });
    add_size_rows(&mut model, min_cols, min_rows)?;
    model.sense = Sense::Maximize;
    model.integral_objective = false;
    model.offset = T::zero();
    model.objective = vec![T::zero(); model.y_count()];
    let first_x = model.y_count();
    for e in f_set.entries() {
        let cost =
            T::from_u64(e.c.num).expect("count fits") / T::from_u64(e.c.den).expect("count fits");
        model.objective.push(cost);
        model.lower.push(T::zero());
        model.upper.push(T::one());
        model.choices.push(ChoiceVar {
            d: e.d,
            a: e.a,
            cost: e.c,
        });
    }
    let xs: Vec<usize> = (first_x..first_x + model.choices.len()).collect();
    let choice = xs.iter().map(|&v| (v, T::one())).collect();
    model.push_row(RowKind::Choice, choice, Relation::Eq, T::one());

    // sum d x + sum_+ y = m
    let mut del: Vec<(usize, T)> = xs
        .iter()
        .zip(&model.choices)
        .filter(|(_, c)| c.d > 0)
        .map(|(&v, c)| (v, T::from_count(c.d)))
        .collect();
    del.extend(model.edge_terms(T::one(), T::zero()));
    let m = T::from_count(instance.edge_count());
    model.push_row(RowKind::DeletionLink, del, Relation::Eq, m);

    // sum a x - sum_- y = 0
    let mut add: Vec<(usize, T)> = xs
        .iter()
        .zip(&model.choices)
        .filter(|(_, c)| c.a > 0)
        .map(|(&v, c)| (v, T::from_count(c.a)))
        .collect();
    add.extend(model.edge_terms(T::zero(), -T::one()));
    model.push_row(RowKind::AdditionLink, add, Relation::Eq, T::zero());
    Ok(model)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeparationMode {
    Dp,
    Exhaustive,
    /// Integral candidates are still validated; fractional points are not cut.
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BranchingRule {
    #[default]
    MostFractional,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum NodeSelection {
    #[default]
    BestBound,
}

#[derive(Clone, Debug)]
pub struct BncConfig<T> {
    pub int_tol: T,
    pub max_cut_rounds: usize,
    pub node_limit: Option<usize>,
    pub time_limit: Option<Duration>,
    pub branching: BranchingRule,
    pub node_selection: NodeSelection,
    pub separation: SeparationMode,
}

impl<T: Scalar> Default for BncConfig<T> {
    fn default() -> Self {
        Self {
            int_tol: T::int_tol(),
            max_cut_rounds: 50,
            node_limit: None,
            time_limit: None,
            branching: BranchingRule::MostFractional,
            node_selection: NodeSelection::BestBound,
            separation: SeparationMode::Dp,
        }
    }
}

impl<T: Scalar> BncConfig<T> {
    pub fn with_separation(mut self, mode: SeparationMode) -> Self {
        self.separation = mode;
        self
    }

    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.time_limit = Some(limit);
        self
    }

    pub fn with_node_limit(mut self, limit: usize) -> Self {
        self.node_limit = Some(limit);
        self
    }

    fn validate(&self) -> Result<()> {
        let bad = !(self.int_tol > T::zero() && self.int_tol < T::lit(0.5))
            || self.max_cut_rounds == 0
            || self.node_limit == Some(0)
            || self.time_limit == Some(Duration::ZERO);
        if bad {
            return Err(Error::InvalidArgument(
                "branch-and-cut limits must be positive".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MilpStatus {
    Optimal,
    Infeasible,
    LimitReached,
}

#[derive(Clone, Debug)]
pub struct MilpResult<T> {
    pub status: MilpStatus,
    /// Incumbent `y` values, row-major.
    pub y: Option<Vec<bool>>,
    /// `(d, a)` of the chosen `x_da`, for the linearized model.
    pub choice: Option<(usize, usize)>,
    pub solution: Option<EditSolution>,
    pub objective: Option<T>,
    pub best_bound: T,
    pub root_bound: T,
    pub nodes: usize,
    pub cuts: usize,
    pub wall_time: Duration,
}

impl<T: Scalar> MilpResult<T> {
    pub fn is_optimal(&self) -> bool {
        self.status == MilpStatus::Optimal
    }

    /// Absolute distance between incumbent and bound.
    pub fn gap(&self) -> Option<T> {
        self.objective.map(|o| (o - self.best_bound).abs())
    }
}

#[derive(Clone, Debug)]
struct Node<T> {
    fixings: Vec<(usize, bool)>,
    /// Lower bound in minimization form.
    bound: T,
    id: usize,
}

impl<T: Scalar> PartialEq for Node<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<T: Scalar> Eq for Node<T> {}
impl<T: Scalar> PartialOrd for Node<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Scalar> Ord for Node<T> {
    // max-heap: smaller bound first, then larger id
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .bound
            .partial_cmp(&self.bound)
            .unwrap_or(Ordering::Equal)
            .then(self.id.cmp(&other.id))
    }
}

enum NodeOutcome<T> {
    Pruned,
    Integral { values: Vec<T>, bound: T },
    Branch { var: usize, bound: T },
    Limit { bound: T },
}

struct Search<'a, T: Scalar> {
    model: &'a ModelSpec<T>,
    config: &'a BncConfig<T>,
    lp: SimplexSolver<T>,
    pool: HashSet<(usize, usize, usize, usize)>,
    cuts: usize,
    /// +1 for minimization, -1 for maximization.
    sign: T,
    offset_min: T,
    incumbent: Option<(T, Vec<T>)>,
    start: Instant,
}

impl<'a, T: Scalar> Search<'a, T> {
    fn new(model: &'a ModelSpec<T>, config: &'a BncConfig<T>) -> Result<Self> {
        let lp = SimplexSolver::new(&model.relaxation()?);
        let sign = match model.sense {
            Sense::Minimize => T::one(),
            Sense::Maximize => -T::one(),
        };
        Ok(Self {
            model,
            config,
            lp,
            pool: HashSet::new(),
            cuts: 0,
            sign,
            offset_min: sign * model.offset,
            incumbent: None,
            start: Instant::now(),
        })
    }

    fn out_of_time(&self) -> bool {
        self.config
            .time_limit
            .is_some_and(|t| self.start.elapsed() >= t)
    }

    /// Whether a node with minimization-form bound `bound` may still beat the
    /// incumbent.
    fn promising(&self, bound: T) -> bool {
        match &self.incumbent {
            None => true,
            Some((best, _)) => {
                if self.model.integral_objective {
                    (bound - self.config.int_tol).ceil() < *best - T::lit(0.5)
                } else {
                    bound < *best - T::opt_tol() * T::lit(10.0) * (T::one() + best.abs())
                }
            }
        }
    }

    fn apply_fixings(&mut self, fixings: &[(usize, bool)]) -> Result<()> {
        let n = self.model.var_count();
        let mut want: Vec<(T, T)> = (0..n).map(|v| self.model.bounds(v)).collect();
        for &(v, up) in fixings {
            let val = if up { T::one() } else { T::zero() };
            want[v] = (val, val);
        }
        for (v, (lo, hi)) in want.into_iter().enumerate() {
            if self.lp.bounds(v) != (lo, hi) {
                self.lp.set_bounds(v, lo, hi)?;
            }
        }
        Ok(())
    }

    fn add_cuts(&mut self, cuts: &[P4Cut<T>]) -> Result<usize> {
        let model = self.model;
        let rows: Vec<Row<T>> = cuts
            .iter()
            .filter(|c| self.pool.insert(c.key()))
            .map(|c| {
                Row::new(
                    vec![
                        (model.y_var(c.i, c.l), T::one()),
                        (model.y_var(c.k, c.j), T::one()),
                        (model.y_var(c.k, c.l), T::one()),
                        (model.y_var(c.i, c.j), -T::one()),
                    ],
                    Relation::Le,
                    T::lit(2.0),
                )
            })
            .collect();
        self.lp.add_rows(&rows)?;
        self.cuts += rows.len();
        Ok(rows.len())
    }

    fn separate(&self, point: &FractionalPoint<T>) -> Vec<P4Cut<T>> {
        match self.config.separation {
            SeparationMode::Dp => separate_dp(point),
            SeparationMode::Exhaustive => separate_exhaustive(point),
            SeparationMode::None => Vec::new(),
        }
    }

    fn most_fractional(&self, values: &[T], range: std::ops::Range<usize>) -> Option<usize> {
        let half = T::lit(0.5);
        let mut best: Option<(usize, T)> = None;
        for v in range {
            let x = values[v];
            let frac = (x - x.floor()).min(x.ceil() - x);
            if frac > self.config.int_tol {
                let dist = (x - half).abs();
                if best.is_none_or(|(_, b)| dist < b) {
                    best = Some((v, dist));
                }
            }
        }
        best.map(|(v, _)| v)
    }

    /// Cutting loop at one node.
    fn process(&mut self, fixings: &[(usize, bool)]) -> Result<NodeOutcome<T>> {
        self.apply_fixings(fixings)?;
        let (u, v) = (self.model.instance.u_count(), self.model.instance.v_count());
        let ny = self.model.y_count();
        let mut rounds = 0;
        loop {
            let sol = self.lp.solve()?;
            match sol.status {
                LpStatus::Infeasible => return Ok(NodeOutcome::Pruned),
                LpStatus::Unbounded => {
                    return Err(LpError::Numerical(
                        "relaxation of a bounded model reported unbounded".into(),
                    )
                    .into())
                }
                LpStatus::Optimal => {}
            }
            let bound = self.sign * sol.objective_value + self.offset_min;
            if !self.promising(bound) {
                return Ok(NodeOutcome::Pruned);
            }
            if self.out_of_time() {
                return Ok(NodeOutcome::Limit { bound });
            }
            let values = sol.values;
            let y_integral = self.most_fractional(&values, 0..ny).is_none();
            if y_integral && self.model.lazy_p4 {
                let rounded: Vec<T> = values[..ny].iter().map(|x| x.round()).collect();
                let point = FractionalPoint::new(u, v, rounded)?;
                let violated = separate_dp(&point);
                if !violated.is_empty() {
                    if self.add_cuts(&violated)? == 0 {
                        return Err(LpError::Numerical(
                            "integral point violates a row already in the pool".into(),
                        )
                        .into());
                    }
                    continue;
                }
            }
            if y_integral {
                return Ok(match self.most_fractional(&values, ny..values.len()) {
                    Some(var) => NodeOutcome::Branch { var, bound },
                    None => NodeOutcome::Integral { values, bound },
                });
            }
            if self.model.lazy_p4 && rounds < self.config.max_cut_rounds {
                let point = FractionalPoint::from_relaxation(u, v, &values[..ny])?;
                let cuts = self.separate(&point);
                if self.add_cuts(&cuts)? > 0 {
                    rounds += 1;
                    continue;
                }
            }
            let var = self
                .most_fractional(&values, 0..ny)
                .expect("fractional y exists");
            return Ok(NodeOutcome::Branch { var, bound });
        }
    }

    fn accept(&mut self, values: Vec<T>) -> Result<()> {
        let rounded: Vec<T> = values.iter().map(|x| x.round()).collect();
        for r in &self.model.rows {
            if r.row.violation(&rounded) > T::feas_tol() {
                return Err(LpError::Numerical(format!(
                    "rounded candidate violates a {:?} row",
                    r.kind
                ))
                .into());
            }
        }
        let mut obj = self.sign * self.model.evaluate(&rounded);
        if self.model.integral_objective {
            obj = obj.round();
        }
        if self.incumbent.as_ref().is_none_or(|(best, _)| obj < *best) {
            self.incumbent = Some((obj, rounded));
        }
        Ok(())
    }
}

/// Decodes 0/1 edit variables into the clustering of their components.
pub fn decode_clustering(instance: &BipartiteInstance, y: &[bool]) -> Biclusterization {
    let edited = BipartiteInstance::new(
        instance.u_count(),
        instance.v_count(),
        (0..instance.u_count())
            .flat_map(|i| (0..instance.v_count()).map(move |j| (i, j)))
            .filter(|&(i, j)| y[i * instance.v_count() + j]),
    )
    .expect("indices in range");
    let mut u_labels = vec![0; instance.u_count()];
    let mut v_labels = vec![0; instance.v_count()];
    for (c, (us, vs)) in edited.components().into_iter().enumerate() {
        us.into_iter().for_each(|i| u_labels[i] = c);
        vs.into_iter().for_each(|j| v_labels[j] = c);
    }
    Biclusterization::from_labels(&u_labels, &v_labels)
}

/// Root relaxation value after cutting rounds, in the model's own sense.
pub fn root_relaxation_bound<T: Scalar>(
    model: &ModelSpec<T>,
    config: &BncConfig<T>,
) -> Result<Option<T>> {
    config.validate()?;
    if model.trivially_infeasible {
        return Ok(None);
    }
    let mut search = Search::new(model, config)?;
    Ok(match search.process(&[])? {
        NodeOutcome::Pruned => None,
        NodeOutcome::Integral { bound, .. }
        | NodeOutcome::Branch { bound, .. }
        | NodeOutcome::Limit { bound } => Some(search.sign * bound),
    })
}

/// Solves a model to proven optimality or until a limit is hit.
pub fn solve<T: Scalar>(model: &ModelSpec<T>, config: &BncConfig<T>) -> Result<MilpResult<T>> {
    config.validate()?;
    let start = Instant::now();
    let empty = |status| MilpResult {
        status,
        y: None,
        choice: None,
        solution: None,
        objective: None,
        best_bound: T::nan(),
        root_bound: T::nan(),
        nodes: 0,
        cuts: 0,
        wall_time: start.elapsed(),
    };
    if model.trivially_infeasible {
        return Ok(empty(MilpStatus::Infeasible));
    }
    let mut search = Search::new(model, config)?;
    let mut heap = BinaryHeap::new();
    heap.push(Node {
        fixings: Vec::new(),
        bound: T::neg_infinity(),
        id: 0,
    });
    let mut next_id = 1;
    let mut nodes = 0;
    let mut root_bound = T::nan();
    let mut open_bound: Option<T> = None;
    while let Some(node) = heap.pop() {
        if !search.promising(node.bound) {
            continue;
        }
        if config.node_limit.is_some_and(|l| nodes >= l) || search.out_of_time() {
            open_bound = Some(node.bound);
            break;
        }
        nodes += 1;
        let outcome = search.process(&node.fixings)?;
        if nodes == 1 {
            root_bound = match &outcome {
                NodeOutcome::Integral { bound, .. }
                | NodeOutcome::Branch { bound, .. }
                | NodeOutcome::Limit { bound } => search.sign * *bound,
                NodeOutcome::Pruned => T::nan(),
            };
        }
        match outcome {
            NodeOutcome::Pruned => {}
            NodeOutcome::Integral { values, .. } => search.accept(values)?,
            NodeOutcome::Branch { var, bound } => {
                for up in [false, true] {
                    let mut fixings = node.fixings.clone();
                    fixings.push((var, up));
                    heap.push(Node {
                        fixings,
                        bound,
                        id: next_id,
                    });
                    next_id += 1;
                }
            }
            NodeOutcome::Limit { bound } => {
                open_bound = Some(bound);
                break;
            }
        }
    }
    let limited = open_bound.is_some();
    let open_min = heap
        .iter()
        .map(|n| n.bound)
        .chain(open_bound)
        .fold(None, |acc: Option<T>, b| Some(acc.map_or(b, |a| a.min(b))));

    let sign = search.sign;
    let cuts = search.cuts;
    let mut result = empty(MilpStatus::Infeasible);
    result.nodes = nodes;
    result.cuts = cuts;
    result.root_bound = root_bound;
    match search.incumbent.take() {
        Some((obj, values)) => {
            let ny = model.y_count();
            let y: Vec<bool> = values[..ny].iter().map(|&x| x > T::lit(0.5)).collect();
            let clustering = decode_clustering(&model.instance, &y);
            let reencoded: Vec<bool> = (0..model.instance.u_count())
                .flat_map(|i| (0..model.instance.v_count()).map(move |j| (i, j)))
                .map(|(i, j)| clustering.together(i, j))
                .collect();
            if reencoded != y {
                return Err(LpError::Numerical("incumbent is not a bicluster graph".into()).into());
            }
            result.choice = model
                .choices
                .iter()
                .zip(&values[ny..])
                .find(|(_, &x)| x > T::lit(0.5))
                .map(|(c, _)| (c.d, c.a));
            result.solution = Some(EditSolution::new(&model.instance, clustering)?);
            result.y = Some(y);
            result.objective = Some(sign * obj);
            let bound = match (limited, open_min) {
                (true, Some(b)) => b.min(obj),
                _ => obj,
            };
            result.best_bound = sign * bound;
            result.status = if limited {
                MilpStatus::LimitReached
            } else {
                MilpStatus::Optimal
            };
        }
        None => {
            if limited {
                result.status = MilpStatus::LimitReached;
                result.best_bound = sign * open_min.unwrap_or(T::neg_infinity());
            }
        }
    }
    result.wall_time = start.elapsed();
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::{five_by_four, lone_p4};
    use crate::graph::{edit_cost, is_bicluster_graph};
    use crate::preprocess::preprocess;

    fn bgep_opt(g: &BipartiteInstance, mode: SeparationMode) -> MilpResult<f64> {
        let cfg = BncConfig::default().with_separation(mode);
        solve(&build_bgep::<f64>(g), &cfg).unwrap()
    }

    #[test]
    fn edgeless_needs_no_edits() {
        let r = bgep_opt(
            &BipartiteInstance::new(3, 3, []).unwrap(),
            SeparationMode::Dp,
        );
        assert!(r.is_optimal());
        assert_eq!(r.objective, Some(0.0));
    }

    #[test]
    fn lone_p4_needs_one_edit() {
        for mode in [
            SeparationMode::Dp,
            SeparationMode::Exhaustive,
            SeparationMode::None,
        ] {
            let r = bgep_opt(&lone_p4(), mode);
            assert_eq!(r.objective, Some(1.0), "{mode:?}");
            let sol = r.solution.unwrap();
            assert!(is_bicluster_graph(&sol.apply(&lone_p4())));
        }
    }

    #[test]
    fn five_by_four_needs_two_edits() {
        let r = bgep_opt(&five_by_four(), SeparationMode::Dp);
        assert_eq!(r.objective, Some(2.0));
        assert_eq!(r.best_bound, 2.0);
    }

    #[test]
    fn size_rows_on_five_by_four() {
        let g = five_by_four();
        let r = solve(
            &build_bgeps::<f64>(&g, 2, 2).unwrap(),
            &BncConfig::default(),
        )
        .unwrap();
        assert_eq!(r.objective, Some(2.0));
        let sol = r.solution.unwrap();
        assert!(crate::graph::check_size_constraints(
            &g,
            &sol.clustering,
            2,
            2
        ));
        let free = solve(
            &build_bgeps::<f64>(&g, 0, 0).unwrap(),
            &BncConfig::default(),
        )
        .unwrap();
        assert_eq!(free.objective, Some(2.0));
        assert!(build_bgeps::<f64>(&g, 0, 0).unwrap().rows().is_empty());
    }

    #[test]
    fn structurally_infeasible_minima() {
        let g = BipartiteInstance::new(1, 1, [(0, 0)]).unwrap();
        assert!(matches!(
            build_bgeps::<f64>(&g, 2, 2),
            Err(Error::InfeasibleMinima { .. })
        ));
    }

    #[test]
    fn lambda_model_prefers_additions() {
        let g = five_by_four();
        let m = build_bgeps_lambda::<f64>(&g, 0, 0, 2, 1).unwrap();
        let r = solve(&m, &BncConfig::default()).unwrap();
        assert!(r.is_optimal());
        assert_eq!(r.objective, Some(0.0));
        assert_eq!(
            edit_cost(&g, &r.solution.unwrap().clustering).unwrap(),
            (2, 0)
        );
    }

    #[test]
    fn lambda_zero_cases() {
        let g = five_by_four();
        let r = solve(
            &build_bgeps_lambda::<f64>(&g, 0, 0, 0, 5).unwrap(),
            &BncConfig::default(),
        )
        .unwrap();
        assert_eq!(r.status, MilpStatus::Infeasible);
        let clean = BipartiteInstance::new(2, 2, [(0, 0), (1, 1)]).unwrap();
        let r = solve(
            &build_bgeps_lambda::<f64>(&clean, 0, 0, 0, 1).unwrap(),
            &BncConfig::default(),
        )
        .unwrap();
        assert!(r.is_optimal());
        assert_eq!(r.solution.unwrap().total(), 0);
        let r = solve(
            &build_bgeps_lambda::<f64>(&clean, 0, 0, 0, 0).unwrap(),
            &BncConfig::default(),
        )
        .unwrap();
        assert_eq!(r.status, MilpStatus::Infeasible);
    }

    #[test]
    fn preprocessing_only_for_plain_model() {
        let g = five_by_four();
        let pre = preprocess(&g);
        let mut m = build_bgep::<f64>(&g);
        m.apply_preprocess(&pre).unwrap();
        assert_eq!(
            solve(&m, &BncConfig::default()).unwrap().objective,
            Some(2.0)
        );
        let mut s = build_bgeps::<f64>(&g, 2, 2).unwrap();
        assert!(s.apply_preprocess(&pre).is_err());
    }

    #[test]
    fn node_limit_reports_sandwich() {
        let g = crate::io::block_example();
        let cfg = BncConfig::default()
            .with_node_limit(1)
            .with_separation(SeparationMode::None);
        let r = solve(&build_bgep::<f64>(&g), &cfg).unwrap();
        if r.status == MilpStatus::LimitReached {
            if let Some(obj) = r.objective {
                assert!(r.best_bound <= obj + 1e-9);
            }
        }
    }

    #[test]
    fn single_precision_solve() {
        let r = solve(&build_bgep::<f32>(&five_by_four()), &BncConfig::default()).unwrap();
        assert_eq!(r.objective, Some(2.0f32));
    }

    #[test]
    fn invalid_config_rejected() {
        let cfg = BncConfig::<f64> {
            max_cut_rounds: 0,
            ..Default::default()
        };
        assert!(solve(&build_bgep::<f64>(&lone_p4()), &cfg).is_err());
    }
}
