//! Bounded-variable linear programming on a dense tableau.
//!
//! Every row `a x (<=|=|>=) b` gets a slack `s` with `a x + s = b`; the slack
//! is bounded by `[0, inf)`, `[0, 0]` or `(-inf, 0]` depending on the relation.
//! Structural variables always have finite bounds, so the all-slack basis with
//! every structural parked at its cheaper bound is dual feasible. Solves run
//! the dual simplex from there (or from the previous basis after rows or
//! bounds change) and finish with a primal pass that mops up round-off.

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

/// A sparse row `sum coefs (relation) rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct Row<T> {
    pub coefs: Vec<(usize, T)>,
    pub relation: Relation,
    pub rhs: T,
}

impl<T: Scalar> Row<T> {
    pub fn new(coefs: Vec<(usize, T)>, relation: Relation, rhs: T) -> Self {
        Self {
            coefs,
            relation,
            rhs,
        }
    }

    pub fn activity(&self, x: &[T]) -> T {
        self.coefs
            .iter()
            .fold(T::zero(), |acc, &(j, c)| acc + c * x[j])
    }

    /// Amount by which `x` violates the row (0 when satisfied).
    pub fn violation(&self, x: &[T]) -> T {
        let act = self.activity(x);
        match self.relation {
            Relation::Le => (act - self.rhs).max(T::zero()),
            Relation::Ge => (self.rhs - act).max(T::zero()),
            Relation::Eq => (act - self.rhs).abs(),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LpError {
    #[error("variable {var}: bounds must be finite with lower <= upper")]
    InvalidBounds { var: usize },
    #[error("row {row} references variable {var} of {var_count}")]
    InvalidIndex {
        row: usize,
        var: usize,
        var_count: usize,
    },
    #[error("objective has {got} coefficients for {expected} variables")]
    ObjectiveLength { got: usize, expected: usize },
    #[error("non-finite data in row {row}")]
    NonFinite { row: usize },
    #[error("numerical failure: {0}")]
    Numerical(String),
}

/// A bounded-variable continuous linear program.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearProgram<T> {
    sense: Sense,
    objective: Vec<T>,
    lower: Vec<T>,
    upper: Vec<T>,
    rows: Vec<Row<T>>,
}

impl<T: Scalar> LinearProgram<T> {
    pub fn new(
        sense: Sense,
        objective: Vec<T>,
        lower: Vec<T>,
        upper: Vec<T>,
    ) -> Result<Self, LpError> {
        let n = objective.len();
        if lower.len() != n || upper.len() != n {
            return Err(LpError::ObjectiveLength {
                got: n,
                expected: lower.len().max(upper.len()),
            });
        }
        for var in 0..n {
            let (l, u) = (lower[var], upper[var]);
            if !(l.is_finite() && u.is_finite() && l <= u) {
                return Err(LpError::InvalidBounds { var });
            }
            if !objective[var].is_finite() {
                return Err(LpError::NonFinite { row: usize::MAX });
            }
        }
        Ok(Self {
            sense,
            objective,
            lower,
            upper,
            rows: Vec::new(),
        })
    }

    pub fn add_row(&mut self, row: Row<T>) -> Result<(), LpError> {
        check_row(&row, self.rows.len(), self.var_count())?;
        self.rows.push(row);
        Ok(())
    }

    pub fn with_rows(mut self, rows: impl IntoIterator<Item = Row<T>>) -> Result<Self, LpError> {
        for r in rows {
            self.add_row(r)?;
        }
        Ok(self)
    }

    pub fn var_count(&self) -> usize {
        self.objective.len()
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    pub fn objective(&self) -> &[T] {
        &self.objective
    }

    pub fn lower(&self) -> &[T] {
        &self.lower
    }

    pub fn upper(&self) -> &[T] {
        &self.upper
    }

    pub fn rows(&self) -> &[Row<T>] {
        &self.rows
    }

    pub fn objective_value(&self, x: &[T]) -> T {
        self.objective
            .iter()
            .zip(x)
            .fold(T::zero(), |acc, (&c, &v)| acc + c * v)
    }
}

fn check_row<T: Scalar>(row: &Row<T>, index: usize, var_count: usize) -> Result<(), LpError> {
    if !row.rhs.is_finite() {
        return Err(LpError::NonFinite { row: index });
    }
    for &(var, c) in &row.coefs {
        if var >= var_count {
            return Err(LpError::InvalidIndex {
                row: index,
                var,
                var_count,
            });
        }
        if !c.is_finite() {
            return Err(LpError::NonFinite { row: index });
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ColState {
    Basic,
    AtLower,
    AtUpper,
}

/// Opaque simplex basis, reusable for warm starts.
#[derive(Clone, Debug, PartialEq)]
pub struct Basis {
    head: Vec<usize>,
    state: Vec<ColState>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution<T> {
    pub status: LpStatus,
    pub objective_value: T,
    pub values: Vec<T>,
    pub basis: Option<Basis>,
}

/// Solves `lp` from scratch.
pub fn solve<T: Scalar>(lp: &LinearProgram<T>) -> Result<LpSolution<T>, LpError> {
    SimplexSolver::new(lp).solve()
}

/// Solves `lp` plus `new_rows`, starting from the basis of `previous` when it
/// carries one. The result matches a cold solve of the augmented program.
pub fn resolve_with_new_rows<T: Scalar>(
    lp: &LinearProgram<T>,
    previous: &LpSolution<T>,
    new_rows: &[Row<T>],
) -> Result<LpSolution<T>, LpError> {
    let mut solver = SimplexSolver::new(lp);
    let warm = match &previous.basis {
        Some(b) if previous.status == LpStatus::Optimal => solver.install_basis(b),
        _ => false,
    };
    if !warm {
        solver.solve()?;
    }
    solver.add_rows(new_rows)?;
    solver.solve()
}

const REFACTOR_EVERY: usize = 100;
const STALL_LIMIT: usize = 1000;

/// Stateful simplex context. Rows can be appended and bounds changed between
/// solves; each solve restarts from the last basis.
#[derive(Clone, Debug)]
pub struct SimplexSolver<T> {
    n: usize,
    sense: Sense,
    rows: Vec<Row<T>>,
    objective: Vec<T>,
    /// Minimization costs over all columns (slacks cost nothing).
    cost: Vec<T>,
    lower: Vec<T>,
    upper: Vec<T>,
    tab: Vec<Vec<T>>,
    beta: Vec<T>,
    head: Vec<usize>,
    state: Vec<ColState>,
    d: Vec<T>,
    x: Vec<T>,
    since_refactor: usize,
    total_pivots: usize,
}

impl<T: Scalar> SimplexSolver<T> {
    pub fn new(lp: &LinearProgram<T>) -> Self {
        let n = lp.var_count();
        let cost = match lp.sense {
            Sense::Minimize => lp.objective.clone(),
            Sense::Maximize => lp.objective.iter().map(|&c| -c).collect(),
        };
        let mut s = Self {
            n,
            sense: lp.sense,
            rows: Vec::new(),
            objective: lp.objective.clone(),
            cost,
            lower: lp.lower.clone(),
            upper: lp.upper.clone(),
            tab: Vec::new(),
            beta: Vec::new(),
            head: Vec::new(),
            state: Vec::new(),
            d: Vec::new(),
            x: Vec::new(),
            since_refactor: 0,
            total_pivots: 0,
        };
        s.rows = lp.rows.clone();
        for (r, row) in s.rows.iter().enumerate() {
            let (lo, hi) = slack_bounds::<T>(row.relation);
            s.lower.push(lo);
            s.upper.push(hi);
            s.cost.push(T::zero());
            debug_assert_eq!(s.lower.len(), n + r + 1);
        }
        s.cold_reset();
        s
    }

    pub fn var_count(&self) -> usize {
        self.n
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn total_pivots(&self) -> usize {
        self.total_pivots
    }

    pub fn bounds(&self, var: usize) -> (T, T) {
        (self.lower[var], self.upper[var])
    }

    fn width(&self) -> usize {
        self.n + self.rows.len()
    }

    fn cold_reset(&mut self) {
        let m = self.rows.len();
        let w = self.width();
        self.tab = (0..m)
            .map(|r| {
                let mut t = vec![T::zero(); w];
                for &(j, c) in &self.rows[r].coefs {
                    t[j] = t[j] + c;
                }
                t[self.n + r] = T::one();
                t
            })
            .collect();
        self.beta = self.rows.iter().map(|r| r.rhs).collect();
        self.head = (self.n..w).collect();
        self.state = (0..w)
            .map(|j| {
                if j >= self.n {
                    ColState::Basic
                } else if self.cost[j] >= T::zero() {
                    ColState::AtLower
                } else {
                    ColState::AtUpper
                }
            })
            .collect();
        self.d = self.cost.clone();
        self.x = vec![T::zero(); w];
        self.since_refactor = 0;
    }

    fn install_basis(&mut self, basis: &Basis) -> bool {
        if basis.state.len() != self.width() || basis.head.len() != self.rows.len() {
            return false;
        }
        self.head = basis.head.clone();
        self.state = basis.state.clone();
        if self.refactor().is_err() {
            self.cold_reset();
            return false;
        }
        true
    }

    pub fn basis(&self) -> Basis {
        Basis {
            head: self.head.clone(),
            state: self.state.clone(),
        }
    }

    /// Changes the bounds of a structural variable.
    pub fn set_bounds(&mut self, var: usize, lower: T, upper: T) -> Result<(), LpError> {
        if var >= self.n || !(lower.is_finite() && upper.is_finite() && lower <= upper) {
            return Err(LpError::InvalidBounds { var });
        }
        self.lower[var] = lower;
        self.upper[var] = upper;
        Ok(())
    }

    /// Appends rows; each new slack enters the basis.
    pub fn add_rows(&mut self, rows: &[Row<T>]) -> Result<(), LpError> {
        for row in rows {
            check_row(row, self.rows.len(), self.n)?;
        }
        for row in rows {
            let r = self.rows.len();
            let col = self.n + r;
            for t in &mut self.tab {
                t.push(T::zero());
            }
            let (lo, hi) = slack_bounds::<T>(row.relation);
            self.lower.push(lo);
            self.upper.push(hi);
            self.cost.push(T::zero());
            self.d.push(T::zero());
            self.x.push(T::zero());
            self.state.push(ColState::Basic);

            let w = col + 1;
            let mut dense = vec![T::zero(); w];
            for &(j, c) in &row.coefs {
                dense[j] = dense[j] + c;
            }
            let mut t = dense.clone();
            let mut b = row.rhs;
            for (k, &h) in self.head.iter().enumerate() {
                if h < self.n {
                    let f = dense[h];
                    if f != T::zero() {
                        for (tj, &sj) in t.iter_mut().zip(&self.tab[k]) {
                            *tj = *tj - f * sj;
                        }
                        b = b - f * self.beta[k];
                    }
                }
            }
            t[col] = T::one();
            self.tab.push(t);
            self.beta.push(b);
            self.head.push(col);
            self.rows.push(row.clone());
        }
        Ok(())
    }

    /// Rebuilds `B^-1 [A | I]` from the original rows for the current head.
    fn refactor(&mut self) -> Result<(), LpError> {
        let m = self.rows.len();
        let w = self.width();
        let mut tab: Vec<Vec<T>> = (0..m)
            .map(|r| {
                let mut t = vec![T::zero(); w];
                for &(j, c) in &self.rows[r].coefs {
                    t[j] = t[j] + c;
                }
                t[self.n + r] = T::one();
                t
            })
            .collect();
        let mut beta: Vec<T> = self.rows.iter().map(|r| r.rhs).collect();
        let mut assigned: Vec<Option<usize>> = vec![None; m];
        for &col in &self.head {
            let mut best: Option<(usize, T)> = None;
            for (r, slot) in assigned.iter().enumerate() {
                if slot.is_none() {
                    let v = tab[r][col].abs();
                    if best.is_none_or(|(_, bv)| v > bv) {
                        best = Some((r, v));
                    }
                }
            }
            let (pr, pv) =
                best.ok_or_else(|| LpError::Numerical("basis larger than row count".into()))?;
            if pv <= T::pivot_tol() {
                return Err(LpError::Numerical(
                    "singular basis during refactorization".into(),
                ));
            }
            gauss_pivot(&mut tab, &mut beta, pr, col);
            assigned[pr] = Some(col);
        }
        self.head = assigned
            .into_iter()
            .map(|c| c.expect("every row assigned"))
            .collect();
        self.tab = tab;
        self.beta = beta;
        self.recompute_reduced_costs();
        self.since_refactor = 0;
        Ok(())
    }

    fn recompute_reduced_costs(&mut self) {
        let mut d = self.cost.clone();
        for (r, &h) in self.head.iter().enumerate() {
            let ch = self.cost[h];
            if ch != T::zero() {
                for (dj, &t) in d.iter_mut().zip(&self.tab[r]) {
                    *dj = *dj - ch * t;
                }
            }
        }
        for &h in &self.head {
            d[h] = T::zero();
        }
        self.d = d;
    }

    fn nonbasic_value(&self, j: usize) -> T {
        match self.state[j] {
            ColState::AtLower => self.lower[j],
            ColState::AtUpper => self.upper[j],
            ColState::Basic => T::zero(),
        }
    }

    fn compute_x(&mut self) {
        let w = self.width();
        let mut nz = Vec::new();
        for j in 0..w {
            if self.state[j] != ColState::Basic {
                let v = self.nonbasic_value(j);
                self.x[j] = v;
                if v != T::zero() {
                    nz.push((j, v));
                }
            }
        }
        for (r, &h) in self.head.iter().enumerate() {
            let row = &self.tab[r];
            let v = nz
                .iter()
                .fold(self.beta[r], |acc, &(j, xj)| acc - row[j] * xj);
            self.x[h] = v;
        }
    }

    fn pivot(&mut self, r: usize, q: usize, leaving: ColState) {
        let piv = self.tab[r][q];
        let inv = T::one() / piv;
        for v in self.tab[r].iter_mut() {
            *v = *v * inv;
        }
        self.beta[r] = self.beta[r] * inv;
        self.tab[r][q] = T::one();
        let prow = self.tab[r].clone();
        let pbeta = self.beta[r];
        for (i, row) in self.tab.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[q];
            if f != T::zero() {
                for (v, &p) in row.iter_mut().zip(&prow) {
                    *v = *v - f * p;
                }
                row[q] = T::zero();
                self.beta[i] = self.beta[i] - f * pbeta;
            }
        }
        let f = self.d[q];
        if f != T::zero() {
            for (dj, &p) in self.d.iter_mut().zip(&prow) {
                *dj = *dj - f * p;
            }
        }
        self.d[q] = T::zero();
        let out = self.head[r];
        self.state[out] = leaving;
        self.head[r] = q;
        self.state[q] = ColState::Basic;
        self.since_refactor += 1;
        self.total_pivots += 1;
    }

    fn is_fixed(&self, j: usize) -> bool {
        self.lower[j] == self.upper[j]
    }

    /// Moves nonbasic columns to the bound that makes their reduced cost dual
    /// feasible. Returns false when some column cannot be fixed that way.
    fn make_dual_feasible(&mut self) -> bool {
        let tol = T::opt_tol();
        let mut ok = true;
        for j in 0..self.width() {
            if self.state[j] == ColState::Basic || self.is_fixed(j) {
                continue;
            }
            let dj = self.d[j];
            match self.state[j] {
                ColState::AtLower if dj < -tol => {
                    if self.upper[j].is_finite() {
                        self.state[j] = ColState::AtUpper;
                    } else {
                        ok = false;
                    }
                }
                ColState::AtUpper if dj > tol => {
                    if self.lower[j].is_finite() {
                        self.state[j] = ColState::AtLower;
                    } else {
                        ok = false;
                    }
                }
                _ => {}
            }
        }
        ok
    }

    fn primal_infeasibility(&self, j: usize) -> T {
        let v = self.x[j];
        if v < self.lower[j] {
            self.lower[j] - v
        } else if v > self.upper[j] {
            v - self.upper[j]
        } else {
            T::zero()
        }
    }

    fn iteration_cap(&self) -> usize {
        50_000 + 50 * self.width()
    }

    fn min_objective(&self) -> T {
        (0..self.n).fold(T::zero(), |acc, j| acc + self.cost[j] * self.x[j])
    }

    /// Dual simplex until primal feasible. Returns false if infeasible.
    fn dual_phase(&mut self) -> Result<bool, LpError> {
        let ftol = T::feas_tol();
        let ptol = T::pivot_tol();
        let mut stall = 0;
        let mut bland = false;
        let mut last_obj = T::neg_infinity();
        for _ in 0..self.iteration_cap() {
            if self.since_refactor >= REFACTOR_EVERY {
                self.refactor()?;
            }
            self.compute_x();
            // leaving row
            let mut leave: Option<(usize, T)> = None;
            for (r, &h) in self.head.iter().enumerate() {
                let inf = self.primal_infeasibility(h);
                if inf > ftol {
                    let better = match leave {
                        None => true,
                        Some((lr, li)) => {
                            if bland {
                                h < self.head[lr]
                            } else {
                                inf > li || (inf == li && h < self.head[lr])
                            }
                        }
                    };
                    if better {
                        leave = Some((r, inf));
                    }
                }
            }
            let Some((r, _)) = leave else {
                return Ok(true);
            };
            let h = self.head[r];
            let below = self.x[h] < self.lower[h];
            // entering column
            let mut enter: Option<(usize, T, T)> = None;
            for j in 0..self.width() {
                if self.state[j] == ColState::Basic || self.is_fixed(j) {
                    continue;
                }
                let alpha = self.tab[r][j];
                if alpha.abs() <= ptol {
                    continue;
                }
                let at_lower = self.state[j] == ColState::AtLower;
                let eligible = if below {
                    (at_lower && alpha < T::zero()) || (!at_lower && alpha > T::zero())
                } else {
                    (at_lower && alpha > T::zero()) || (!at_lower && alpha < T::zero())
                };
                if !eligible {
                    continue;
                }
                let dj = if at_lower {
                    self.d[j].max(T::zero())
                } else {
                    (-self.d[j]).max(T::zero())
                };
                let ratio = dj / alpha.abs();
                let better = match enter {
                    None => true,
                    Some((_, br, ba)) => {
                        if bland {
                            ratio < br
                        } else {
                            let slack = T::lit(1e-12) * (T::one() + br.abs());
                            ratio < br - slack || (ratio <= br + slack && alpha.abs() > ba)
                        }
                    }
                };
                if better {
                    enter = Some((j, ratio, alpha.abs()));
                }
            }
            let Some((q, _, _)) = enter else {
                return Ok(false);
            };
            let leaving = if below {
                ColState::AtLower
            } else {
                ColState::AtUpper
            };
            self.pivot(r, q, leaving);
            self.compute_x();
            let obj = self.min_objective();
            if obj <= last_obj + T::opt_tol() {
                stall += 1;
                if stall > STALL_LIMIT {
                    bland = true;
                }
            } else {
                stall = 0;
            }
            last_obj = obj;
        }
        Err(LpError::Numerical(
            "dual simplex iteration cap reached".into(),
        ))
    }

    /// Primal simplex from a primal feasible basis. Returns false if unbounded.
    fn primal_phase(&mut self) -> Result<bool, LpError> {
        let otol = T::opt_tol();
        let ptol = T::pivot_tol();
        let mut stall = 0;
        let mut bland = false;
        for _ in 0..self.iteration_cap() {
            if self.since_refactor >= REFACTOR_EVERY {
                self.refactor()?;
            }
            self.compute_x();
            let mut enter: Option<(usize, T)> = None;
            for j in 0..self.width() {
                if self.state[j] == ColState::Basic || self.is_fixed(j) {
                    continue;
                }
                let dj = self.d[j];
                let gain = match self.state[j] {
                    ColState::AtLower if dj < -otol => -dj,
                    ColState::AtUpper if dj > otol => dj,
                    _ => continue,
                };
                let better = match enter {
                    None => true,
                    Some((_, g)) => !bland && gain > g,
                };
                if better {
                    enter = Some((j, gain));
                }
            }
            let Some((q, _)) = enter else {
                return Ok(true);
            };
            let dir = if self.state[q] == ColState::AtLower {
                T::one()
            } else {
                -T::one()
            };
            let flip = self.upper[q] - self.lower[q];
            // (limit, row, side, |alpha|)
            let mut block: Option<(T, usize, ColState, T)> = None;
            for (r, &h) in self.head.iter().enumerate() {
                let alpha = self.tab[r][q];
                if alpha.abs() <= ptol {
                    continue;
                }
                let rate = -alpha * dir;
                let (limit, side) = if rate < T::zero() {
                    if !self.lower[h].is_finite() {
                        continue;
                    }
                    (
                        ((self.x[h] - self.lower[h]) / -rate).max(T::zero()),
                        ColState::AtLower,
                    )
                } else {
                    if !self.upper[h].is_finite() {
                        continue;
                    }
                    (
                        ((self.upper[h] - self.x[h]) / rate).max(T::zero()),
                        ColState::AtUpper,
                    )
                };
                let better = match block {
                    None => true,
                    Some((bl, br, _, ba)) => {
                        limit < bl
                            || (limit == bl
                                && if bland {
                                    h < self.head[br]
                                } else {
                                    alpha.abs() > ba
                                })
                    }
                };
                if better {
                    block = Some((limit, r, side, alpha.abs()));
                }
            }
            let step = match block {
                Some((limit, r, side, _)) if limit < flip => {
                    self.pivot(r, q, side);
                    limit
                }
                _ if flip.is_finite() => {
                    self.state[q] = if self.state[q] == ColState::AtLower {
                        ColState::AtUpper
                    } else {
                        ColState::AtLower
                    };
                    flip
                }
                _ => return Ok(false),
            };
            if step <= T::zero() {
                stall += 1;
                if stall > STALL_LIMIT {
                    bland = true;
                }
            } else {
                stall = 0;
            }
        }
        Err(LpError::Numerical(
            "primal simplex iteration cap reached".into(),
        ))
    }

    fn primal_feasible(&mut self) -> bool {
        self.compute_x();
        self.head
            .iter()
            .all(|&h| self.primal_infeasibility(h) <= T::feas_tol())
    }

    fn run(&mut self) -> Result<LpStatus, LpError> {
        if !self.make_dual_feasible() && !self.primal_feasible() {
            self.cold_reset();
        }
        if !self.dual_phase()? {
            return Ok(LpStatus::Infeasible);
        }
        if !self.primal_phase()? {
            return Ok(LpStatus::Unbounded);
        }
        Ok(LpStatus::Optimal)
    }

    fn rows_satisfied(&self) -> bool {
        let xs = &self.x[..self.n];
        self.rows
            .iter()
            .all(|r| r.violation(xs) <= T::feas_tol() * (T::one() + r.rhs.abs()) * T::lit(10.0))
    }

    /// Solves the current program, warm-starting from the last basis.
    pub fn solve(&mut self) -> Result<LpSolution<T>, LpError> {
        if self.since_refactor > 0 && self.refactor().is_err() {
            self.cold_reset();
        }
        let mut status = self.run()?;
        if status == LpStatus::Optimal {
            self.compute_x();
            if !self.rows_satisfied() {
                if self.refactor().is_err() {
                    self.cold_reset();
                }
                status = self.run()?;
                self.compute_x();
                if status == LpStatus::Optimal && !self.rows_satisfied() {
                    return Err(LpError::Numerical(
                        "solution violates rows after refactorization".into(),
                    ));
                }
            }
        }
        let values: Vec<T> = (0..self.n)
            .map(|j| self.x[j].max(self.lower[j]).min(self.upper[j]))
            .collect();
        let objective_value = match status {
            LpStatus::Optimal => self
                .objective
                .iter()
                .zip(&values)
                .fold(T::zero(), |acc, (&c, &v)| acc + c * v),
            LpStatus::Infeasible => T::nan(),
            LpStatus::Unbounded => match self.sense {
                Sense::Minimize => T::neg_infinity(),
                Sense::Maximize => T::infinity(),
            },
        };
        Ok(LpSolution {
            status,
            objective_value,
            values,
            basis: Some(self.basis()),
        })
    }
}

fn slack_bounds<T: Scalar>(rel: Relation) -> (T, T) {
    match rel {
        Relation::Le => (T::zero(), T::infinity()),
        Relation::Eq => (T::zero(), T::zero()),
        Relation::Ge => (T::neg_infinity(), T::zero()),
    }
}

fn gauss_pivot<T: Scalar>(tab: &mut [Vec<T>], beta: &mut [T], r: usize, q: usize) {
    let inv = T::one() / tab[r][q];
    for v in tab[r].iter_mut() {
        *v = *v * inv;
    }
    beta[r] = beta[r] * inv;
    tab[r][q] = T::one();
    let prow = tab[r].clone();
    let pb = beta[r];
    for (i, row) in tab.iter_mut().enumerate() {
        if i == r {
            continue;
        }
        let f = row[q];
        if f != T::zero() {
            for (v, &p) in row.iter_mut().zip(&prow) {
                *v = *v - f * p;
            }
            row[q] = T::zero();
            beta[i] = beta[i] - f * pb;
        }
    }
}
