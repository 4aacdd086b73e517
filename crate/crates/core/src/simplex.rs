//! Dense bounded-variable primal simplex.
//!
//! Every constraint row `a·x (sense) b` gets a logical variable `y = a·x`
//! whose bounds encode the sense, so the working system is `A x − y = 0`
//! with bounds on every column. Phase one uses one artificial column per
//! row that is violated by the starting point. The basis inverse is kept
//! explicitly and refactorized every [`REFACTOR_EVERY`] pivots.
//!
//! Tableau rows are reported in the corner-relaxation convention
//! `x_B = f + Σ r_j s_j`, where `s_j ≥ 0` is the displacement of nonbasic
//! `j` from the bound it sits at.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::instance::{InstanceError, MilpInstance, ObjSense, RowSense};

/// Primal feasibility tolerance.
pub const FEAS_TOL: f64 = 1e-7;
/// Smallest pivot element accepted by the ratio test.
pub const PIVOT_TOL: f64 = 1e-9;
/// Magnitudes below this are treated as zero.
pub const ZERO_TOL: f64 = 1e-12;
const OPT_TOL: f64 = 1e-9;
const REFACTOR_EVERY: usize = 50;
const BLAND_AFTER: usize = 100;

#[derive(Debug, Error, PartialEq)]
pub enum SimplexError {
    #[error("iteration limit of {0} exceeded")]
    IterationLimit(usize),
    #[error("basis matrix became singular")]
    SingularBasis,
    #[error("{0:?} is not basic")]
    NotBasic(VarRef),
    #[error("value {value} for {name} lies outside [{lower}, {upper}]")]
    FixOutOfBounds { name: String, value: f64, lower: f64, upper: f64 },
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// A column of the working system: a structural variable or a row's logical.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum VarRef {
    Structural(usize),
    Logical(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Where a nonbasic column sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundSide {
    Lower,
    Upper,
    /// Free column parked at zero; its displacement has no sign.
    Free,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ColStatus {
    Basic,
    AtLower,
    AtUpper,
    Free,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NonbasicVar {
    pub var: VarRef,
    pub side: BoundSide,
    /// Value the column currently takes (its bound, or 0 when free).
    pub value: f64,
}

/// One simplex tableau row, `basic = value + Σ coefs[k] · s_k`, with `k`
/// ranging over [`LpSolution::nonbasic`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableauRow {
    pub basic: VarRef,
    pub value: f64,
    pub coefs: Vec<f64>,
}

#[derive(Debug)]
struct StandardForm {
    m: usize,
    n: usize,
    /// Row-major `m × n` structural matrix.
    a: Vec<f64>,
    cost: Vec<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl StandardForm {
    fn build(inst: &MilpInstance) -> Self {
        let (m, n) = (inst.num_rows(), inst.num_vars());
        let mut a = vec![0.0; m * n];
        for (i, row) in inst.constraints.iter().enumerate() {
            for &(j, v) in &row.coefs {
                a[i * n + j] += v;
            }
        }
        let sign = if inst.sense == ObjSense::Max { -1.0 } else { 1.0 };
        let cost = inst.objective.iter().map(|c| sign * c).collect();
        let mut lower: Vec<f64> = inst.variables.iter().map(|v| v.lower).collect();
        let mut upper: Vec<f64> = inst.variables.iter().map(|v| v.upper).collect();
        for row in &inst.constraints {
            let (lo, hi) = match row.sense {
                RowSense::Le => (f64::NEG_INFINITY, row.rhs),
                RowSense::Ge => (row.rhs, f64::INFINITY),
                RowSense::Eq => (row.rhs, row.rhs),
            };
            lower.push(lo);
            upper.push(hi);
        }
        StandardForm { m, n, a, cost, lower, upper }
    }
}

/// Result of an LP solve. Holds the final basis so tableau rows can be
/// produced on demand.
#[derive(Clone, Debug)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Objective in the instance's own sense, including the offset.
    pub objective: f64,
    /// Structural values.
    pub x: Vec<f64>,
    /// Row activities `a_i · x`.
    pub row_activity: Vec<f64>,
    pub iterations: usize,
    form: Arc<StandardForm>,
    sigma: Vec<f64>,
    head: Vec<usize>,
    status_of: Vec<ColStatus>,
    values: Vec<f64>,
    binv: Vec<f64>,
}

impl LpSolution {
    fn index(&self, v: VarRef) -> usize {
        match v {
            VarRef::Structural(j) => j,
            VarRef::Logical(i) => self.form.n + i,
        }
    }

    fn var_ref(&self, k: usize) -> Option<VarRef> {
        let (n, m) = (self.form.n, self.form.m);
        if k < n {
            Some(VarRef::Structural(k))
        } else if k < n + m {
            Some(VarRef::Logical(k - n))
        } else {
            None
        }
    }

    pub fn is_basic(&self, v: VarRef) -> bool {
        self.status_of[self.index(v)] == ColStatus::Basic
    }

    /// Basic column per row; `None` marks an artificial left in a redundant row.
    pub fn basis(&self) -> Vec<Option<VarRef>> {
        self.head.iter().map(|&k| self.var_ref(k)).collect()
    }

    pub fn value(&self, v: VarRef) -> f64 {
        self.values[self.index(v)]
    }

    /// Nonbasic columns that are not fixed, in increasing column order. This
    /// is the shared coordinate system of all tableau rows of this basis.
    pub fn nonbasic(&self) -> Vec<NonbasicVar> {
        let total = self.form.n + self.form.m;
        (0..total)
            .filter(|&k| self.status_of[k] != ColStatus::Basic && self.form.upper[k] - self.form.lower[k] > ZERO_TOL)
            .map(|k| NonbasicVar {
                var: self.var_ref(k).unwrap(),
                side: match self.status_of[k] {
                    ColStatus::AtLower => BoundSide::Lower,
                    ColStatus::AtUpper => BoundSide::Upper,
                    _ => BoundSide::Free,
                },
                value: self.values[k],
            })
            .collect()
    }

    fn column_dot(&self, row: &[f64], k: usize) -> f64 {
        let (m, n) = (self.form.m, self.form.n);
        if k < n {
            (0..m).map(|i| row[i] * self.form.a[i * n + k]).sum()
        } else if k < n + m {
            -row[k - n]
        } else {
            self.sigma[k - n - m] * row[k - n - m]
        }
    }

    /// Tableau row of basic column `var`, oriented so that every `s_k ≥ 0`
    /// measures the distance of nonbasic `k` from its bound.
    pub fn tableau_row(&self, var: VarRef) -> Result<TableauRow, SimplexError> {
        let k = self.index(var);
        if self.status_of[k] != ColStatus::Basic {
            return Err(SimplexError::NotBasic(var));
        }
        let m = self.form.m;
        let r = self.head.iter().position(|&h| h == k).ok_or(SimplexError::NotBasic(var))?;
        let rho = &self.binv[r * m..(r + 1) * m];
        let coefs = self
            .nonbasic()
            .iter()
            .map(|nb| {
                let tau = self.column_dot(rho, self.index(nb.var));
                let coef = match nb.side {
                    BoundSide::Upper => tau,
                    BoundSide::Lower | BoundSide::Free => -tau,
                };
                if coef.abs() < ZERO_TOL {
                    0.0
                } else {
                    coef
                }
            })
            .collect();
        Ok(TableauRow { basic: var, value: self.values[k], coefs })
    }
}

/// Solver handle with a configurable iteration limit.
#[derive(Clone, Debug, Default)]
pub struct Simplex {
    iteration_limit: Option<usize>,
}

impl Simplex {
    pub fn new() -> Self {
        Simplex::default()
    }

    pub fn with_iteration_limit(mut self, limit: usize) -> Self {
        self.iteration_limit = Some(limit);
        self
    }

    pub fn solve(&self, inst: &MilpInstance) -> Result<LpSolution, SimplexError> {
        inst.check()?;
        let form = Arc::new(StandardForm::build(inst));
        let limit = self.iteration_limit.unwrap_or(50 * (form.m + form.n).max(1));
        let mut engine = Engine::start(form.clone(), limit);
        let status = engine.run_phases()?;
        let (m, n) = (form.m, form.n);
        let x = engine.values[..n].to_vec();
        let row_activity = engine.values[n..n + m].to_vec();
        let raw: f64 = form.cost.iter().zip(&x).map(|(c, v)| c * v).sum();
        let sign = if inst.sense == ObjSense::Max { -1.0 } else { 1.0 };
        Ok(LpSolution {
            status,
            objective: sign * raw + inst.objective_offset,
            x,
            row_activity,
            iterations: engine.iterations,
            form,
            sigma: engine.sigma,
            head: engine.head,
            status_of: engine.status,
            values: engine.values,
            binv: engine.binv,
        })
    }
}

/// Solves the LP relaxation of `inst` with default settings.
pub fn solve_lp(inst: &MilpInstance) -> Result<LpSolution, SimplexError> {
    Simplex::new().solve(inst)
}

/// Returns a copy of `inst` with `var` fixed to `value`.
pub fn fix_variable(inst: &MilpInstance, var: usize, value: f64) -> Result<MilpInstance, SimplexError> {
    let v = &inst.variables[var];
    if value < v.lower - 1e-9 || value > v.upper + 1e-9 {
        return Err(SimplexError::FixOutOfBounds { name: v.name.clone(), value, lower: v.lower, upper: v.upper });
    }
    let mut out = inst.clone();
    out.variables[var].lower = value;
    out.variables[var].upper = value;
    Ok(out)
}

enum Phase {
    Optimal,
    Unbounded,
}

struct Engine {
    form: Arc<StandardForm>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    sigma: Vec<f64>,
    values: Vec<f64>,
    status: Vec<ColStatus>,
    head: Vec<usize>,
    binv: Vec<f64>,
    iterations: usize,
    limit: usize,
    since_refactor: usize,
    degenerate_run: usize,
}

impl Engine {
    fn start(form: Arc<StandardForm>, limit: usize) -> Self {
        let (m, n) = (form.m, form.n);
        let total = n + 2 * m;
        let mut lower = form.lower.clone();
        let mut upper = form.upper.clone();
        lower.extend(std::iter::repeat_n(0.0, m));
        upper.extend(std::iter::repeat_n(0.0, m));
        let mut values = vec![0.0; total];
        let mut status = vec![ColStatus::AtLower; total];
        for j in 0..n {
            let (lo, up) = (lower[j], upper[j]);
            if lo.is_finite() {
                values[j] = lo;
            } else if up.is_finite() {
                values[j] = up;
                status[j] = ColStatus::AtUpper;
            } else {
                status[j] = ColStatus::Free;
            }
        }
        let mut sigma = vec![1.0; m];
        let mut head = vec![0; m];
        let mut binv = vec![0.0; m * m];
        for i in 0..m {
            let act: f64 = (0..n).map(|j| form.a[i * n + j] * values[j]).sum();
            let (lo, hi) = (lower[n + i], upper[n + i]);
            if act >= lo - FEAS_TOL && act <= hi + FEAS_TOL {
                head[i] = n + i;
                status[n + i] = ColStatus::Basic;
                values[n + i] = act;
                binv[i * m + i] = -1.0;
            } else {
                let target = if act < lo { lo } else { hi };
                values[n + i] = target;
                status[n + i] = if target == lo { ColStatus::AtLower } else { ColStatus::AtUpper };
                let art = n + m + i;
                sigma[i] = if target > act { 1.0 } else { -1.0 };
                upper[art] = f64::INFINITY;
                values[art] = (target - act).abs();
                status[art] = ColStatus::Basic;
                head[i] = art;
                binv[i * m + i] = sigma[i];
            }
        }
        Engine {
            form,
            lower,
            upper,
            sigma,
            values,
            status,
            head,
            binv,
            iterations: 0,
            limit,
            since_refactor: 0,
            degenerate_run: 0,
        }
    }

    fn m(&self) -> usize {
        self.form.m
    }

    fn n(&self) -> usize {
        self.form.n
    }

    fn total(&self) -> usize {
        self.form.n + 2 * self.form.m
    }

    fn is_artificial(&self, k: usize) -> bool {
        k >= self.n() + self.m()
    }

    /// `B⁻¹ A_k`.
    fn ftran(&self, k: usize) -> Vec<f64> {
        let (m, n) = (self.m(), self.n());
        let mut out = vec![0.0; m];
        if k < n {
            for i in 0..m {
                let a = self.form.a[i * n + k];
                if a != 0.0 {
                    for (r, o) in out.iter_mut().enumerate() {
                        *o += self.binv[r * m + i] * a;
                    }
                }
            }
        } else if k < n + m {
            let i = k - n;
            for (r, o) in out.iter_mut().enumerate() {
                *o = -self.binv[r * m + i];
            }
        } else {
            let i = k - n - m;
            for (r, o) in out.iter_mut().enumerate() {
                *o = self.sigma[i] * self.binv[r * m + i];
            }
        }
        out
    }

    fn dot_column(&self, y: &[f64], k: usize) -> f64 {
        let (m, n) = (self.m(), self.n());
        if k < n {
            (0..m).map(|i| y[i] * self.form.a[i * n + k]).sum()
        } else if k < n + m {
            -y[k - n]
        } else {
            self.sigma[k - n - m] * y[k - n - m]
        }
    }

    fn refactor(&mut self) -> Result<(), SimplexError> {
        let m = self.m();
        let mut b = vec![0.0; m * m];
        for (r, &k) in self.head.iter().enumerate() {
            let mut unit = vec![0.0; m];
            self.write_column(k, &mut unit);
            for i in 0..m {
                b[i * m + r] = unit[i];
            }
        }
        self.binv = invert(&b, m).ok_or(SimplexError::SingularBasis)?;
        self.recompute_basics();
        self.since_refactor = 0;
        Ok(())
    }

    fn write_column(&self, k: usize, out: &mut [f64]) {
        let (m, n) = (self.m(), self.n());
        if k < n {
            for i in 0..m {
                out[i] = self.form.a[i * n + k];
            }
        } else if k < n + m {
            out[k - n] = -1.0;
        } else {
            out[k - n - m] = self.sigma[k - n - m];
        }
    }

    fn recompute_basics(&mut self) {
        let m = self.m();
        let mut rhs = vec![0.0; m];
        let mut col = vec![0.0; m];
        for k in 0..self.total() {
            if self.status[k] == ColStatus::Basic || self.values[k] == 0.0 {
                continue;
            }
            col.iter_mut().for_each(|c| *c = 0.0);
            self.write_column(k, &mut col);
            for i in 0..m {
                rhs[i] -= col[i] * self.values[k];
            }
        }
        for r in 0..m {
            let v: f64 = (0..m).map(|i| self.binv[r * m + i] * rhs[i]).sum();
            self.values[self.head[r]] = v;
        }
    }

    fn pivot_binv(&mut self, r: usize, alpha: &[f64]) {
        let m = self.m();
        let p = alpha[r];
        for c in 0..m {
            self.binv[r * m + c] /= p;
        }
        for i in 0..m {
            if i != r && alpha[i] != 0.0 {
                let f = alpha[i];
                for c in 0..m {
                    self.binv[i * m + c] -= f * self.binv[r * m + c];
                }
            }
        }
    }

    fn run_phases(&mut self) -> Result<LpStatus, SimplexError> {
        let (m, n) = (self.m(), self.n());
        let total = self.total();
        let needs_phase_one = self.head.iter().any(|&k| k >= n + m);
        if needs_phase_one {
            let mut cost = vec![0.0; total];
            for c in cost.iter_mut().skip(n + m) {
                *c = 1.0;
            }
            match self.optimize(&cost)? {
                Phase::Optimal => {}
                Phase::Unbounded => unreachable!("phase one objective is bounded below"),
            }
            let infeasibility: f64 = (n + m..total).map(|k| self.values[k]).sum();
            if infeasibility > FEAS_TOL {
                return Ok(LpStatus::Infeasible);
            }
            for k in n + m..total {
                self.upper[k] = 0.0;
                if self.status[k] != ColStatus::Basic {
                    self.values[k] = 0.0;
                    self.status[k] = ColStatus::AtLower;
                }
            }
            self.drive_out_artificials()?;
            self.refactor()?;
        }
        let mut cost = vec![0.0; total];
        cost[..n].copy_from_slice(&self.form.cost);
        self.degenerate_run = 0;
        let phase = self.optimize(&cost)?;
        self.refactor()?;
        Ok(match phase {
            Phase::Optimal => LpStatus::Optimal,
            Phase::Unbounded => LpStatus::Unbounded,
        })
    }

    fn drive_out_artificials(&mut self) -> Result<(), SimplexError> {
        let (m, n) = (self.m(), self.n());
        for r in 0..m {
            if !self.is_artificial(self.head[r]) {
                continue;
            }
            let rho: Vec<f64> = self.binv[r * m..(r + 1) * m].to_vec();
            let mut best: Option<(usize, f64)> = None;
            for k in 0..n + m {
                if self.status[k] == ColStatus::Basic {
                    continue;
                }
                let a = self.dot_column(&rho, k).abs();
                let fixed = self.upper[k] - self.lower[k] <= ZERO_TOL;
                let score = if fixed { a * 1e-3 } else { a };
                if a > 1e-7 && best.is_none_or(|(_, s)| score > s) {
                    best = Some((k, score));
                }
            }
            if let Some((k, _)) = best {
                let alpha = self.ftran(k);
                let out = self.head[r];
                self.values[out] = 0.0;
                self.status[out] = ColStatus::AtLower;
                self.head[r] = k;
                self.status[k] = ColStatus::Basic;
                self.pivot_binv(r, &alpha);
            }
        }
        Ok(())
    }

    fn optimize(&mut self, cost: &[f64]) -> Result<Phase, SimplexError> {
        let m = self.m();
        let total = self.total();
        loop {
            if self.iterations >= self.limit {
                return Err(SimplexError::IterationLimit(self.limit));
            }
            if self.since_refactor >= REFACTOR_EVERY {
                self.refactor()?;
            }
            let mut y = vec![0.0; m];
            for (r, &k) in self.head.iter().enumerate() {
                let c = cost[k];
                if c != 0.0 {
                    for i in 0..m {
                        y[i] += c * self.binv[r * m + i];
                    }
                }
            }
            let bland = self.degenerate_run > BLAND_AFTER;
            let mut entering: Option<(usize, f64, f64)> = None;
            for k in 0..total {
                let st = self.status[k];
                if st == ColStatus::Basic || self.upper[k] - self.lower[k] <= ZERO_TOL {
                    continue;
                }
                let d = cost[k] - self.dot_column(&y, k);
                let dir = match st {
                    ColStatus::AtLower if d < -OPT_TOL => 1.0,
                    ColStatus::AtUpper if d > OPT_TOL => -1.0,
                    ColStatus::Free if d.abs() > OPT_TOL => -d.signum(),
                    _ => continue,
                };
                if bland {
                    entering = Some((k, dir, d.abs()));
                    break;
                }
                if entering.is_none_or(|(_, _, best)| d.abs() > best) {
                    entering = Some((k, dir, d.abs()));
                }
            }
            let Some((q, dir, _)) = entering else {
                return Ok(Phase::Optimal);
            };
            let alpha = self.ftran(q);

            let mut step = f64::INFINITY;
            let mut leave: Option<(usize, bool)> = None;
            for r in 0..m {
                if alpha[r].abs() <= PIVOT_TOL {
                    continue;
                }
                let k = self.head[r];
                let rate = -dir * alpha[r];
                let (limit, to_upper) = if rate < 0.0 {
                    if !self.lower[k].is_finite() {
                        continue;
                    }
                    (((self.values[k] - self.lower[k]).max(0.0)) / -rate, false)
                } else {
                    if !self.upper[k].is_finite() {
                        continue;
                    }
                    (((self.upper[k] - self.values[k]).max(0.0)) / rate, true)
                };
                let better = match leave {
                    None => true,
                    Some((best_r, _)) => {
                        if limit < step - 1e-12 {
                            true
                        } else if limit <= step + 1e-12 {
                            if bland {
                                k < self.head[best_r]
                            } else {
                                alpha[r].abs() > alpha[best_r].abs()
                            }
                        } else {
                            false
                        }
                    }
                };
                if better {
                    step = step.min(limit);
                    if limit < step + 1e-12 {
                        step = limit;
                    }
                    leave = Some((r, to_upper));
                }
            }
            let own_range = self.upper[q] - self.lower[q];
            self.iterations += 1;
            if own_range.is_finite() && own_range <= step {
                // bound flip
                self.values[q] += dir * own_range;
                for r in 0..m {
                    let k = self.head[r];
                    self.values[k] -= dir * own_range * alpha[r];
                }
                self.status[q] = if dir > 0.0 { ColStatus::AtUpper } else { ColStatus::AtLower };
                self.values[q] = if dir > 0.0 { self.upper[q] } else { self.lower[q] };
                self.note_step(own_range);
                continue;
            }
            let Some((r, to_upper)) = leave else {
                return Ok(Phase::Unbounded);
            };
            self.values[q] += dir * step;
            for i in 0..m {
                let k = self.head[i];
                self.values[k] -= dir * step * alpha[i];
            }
            let out = self.head[r];
            if to_upper {
                self.values[out] = self.upper[out];
                self.status[out] = ColStatus::AtUpper;
            } else {
                self.values[out] = self.lower[out];
                self.status[out] = ColStatus::AtLower;
            }
            self.head[r] = q;
            self.status[q] = ColStatus::Basic;
            self.pivot_binv(r, &alpha);
            self.since_refactor += 1;
            self.note_step(step);
        }
    }

    fn note_step(&mut self, step: f64) {
        if step < 1e-12 {
            self.degenerate_run += 1;
        } else {
            self.degenerate_run = 0;
        }
    }
}

/// Gauss-Jordan inverse with partial pivoting of a dense `m × m` matrix.
fn invert(a: &[f64], m: usize) -> Option<Vec<f64>> {
    let mut work = a.to_vec();
    let mut inv = vec![0.0; m * m];
    for i in 0..m {
        inv[i * m + i] = 1.0;
    }
    for c in 0..m {
        let p = (c..m).max_by(|&x, &y| work[x * m + c].abs().total_cmp(&work[y * m + c].abs()))?;
        if work[p * m + c].abs() < 1e-13 {
            return None;
        }
        if p != c {
            for k in 0..m {
                work.swap(p * m + k, c * m + k);
                inv.swap(p * m + k, c * m + k);
            }
        }
        let d = work[c * m + c];
        for k in 0..m {
            work[c * m + k] /= d;
            inv[c * m + k] /= d;
        }
        for r in 0..m {
            if r != c {
                let f = work[r * m + c];
                if f != 0.0 {
                    for k in 0..m {
                        work[r * m + k] -= f * work[c * m + k];
                        inv[r * m + k] -= f * inv[c * m + k];
                    }
                }
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Variable;

    fn pack() -> MilpInstance {
        let mut inst = MilpInstance::new("pack", ObjSense::Max);
        let x1 = inst.add_variable(Variable::continuous("x1", 0.0, f64::INFINITY), 1.0);
        let x2 = inst.add_variable(Variable::continuous("x2", 0.0, f64::INFINITY), 1.0);
        inst.add_constraint("c", vec![(x1, 1.0), (x2, 1.0)], RowSense::Le, 1.0);
        inst
    }

    #[test]
    fn optimal_unbounded_infeasible() {
        let sol = solve_lp(&pack()).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert!((sol.objective - 1.0).abs() < 1e-12);

        let mut unb = MilpInstance::new("u", ObjSense::Max);
        unb.add_variable(Variable::continuous("x1", 0.0, f64::INFINITY), 1.0);
        assert_eq!(solve_lp(&unb).unwrap().status, LpStatus::Unbounded);

        let mut inf = MilpInstance::new("i", ObjSense::Min);
        let x = inf.add_variable(Variable::continuous("x1", 0.0, f64::INFINITY), 1.0);
        inf.add_constraint("c", vec![(x, 1.0)], RowSense::Le, -1.0);
        assert_eq!(solve_lp(&inf).unwrap().status, LpStatus::Infeasible);
    }

    #[test]
    fn single_row_tableau() {
        let mut inst = MilpInstance::new("one", ObjSense::Max);
        let x = inst.add_variable(Variable::continuous("x1", 0.0, f64::INFINITY), 1.0);
        inst.add_constraint("c", vec![(x, 1.0)], RowSense::Le, 1.0);
        let sol = solve_lp(&inst).unwrap();
        let row = sol.tableau_row(VarRef::Structural(0)).unwrap();
        assert_eq!(row.value, 1.0);
        let nb = sol.nonbasic();
        assert_eq!(nb.len(), 1);
        assert_eq!(nb[0].var, VarRef::Logical(0));
        assert_eq!(nb[0].side, BoundSide::Upper);
        assert_eq!(row.coefs, vec![-1.0]);
        assert_eq!(sol.tableau_row(VarRef::Logical(0)), Err(SimplexError::NotBasic(VarRef::Logical(0))));
    }

    #[test]
    fn nonbasic_at_upper_is_sign_flipped() {
        // max x1 + 2 x2, x1 + x2 <= 1.5, x2 <= 1: x2 sits at its upper bound.
        let mut inst = MilpInstance::new("ub", ObjSense::Max);
        let x1 = inst.add_variable(Variable::continuous("x1", 0.0, f64::INFINITY), 1.0);
        let x2 = inst.add_variable(Variable::continuous("x2", 0.0, 1.0), 2.0);
        inst.add_constraint("c", vec![(x1, 1.0), (x2, 1.0)], RowSense::Le, 1.5);
        let sol = solve_lp(&inst).unwrap();
        assert!((sol.objective - 2.5).abs() < 1e-12);
        let nb = sol.nonbasic();
        let pos = nb.iter().position(|v| v.var == VarRef::Structural(1)).unwrap();
        assert_eq!(nb[pos].side, BoundSide::Upper);
        let row = sol.tableau_row(VarRef::Structural(0)).unwrap();
        // x1 = 1.5 - x2 = 1.5 - (1 - s) = 0.5 + s
        assert!((row.value - 0.5).abs() < 1e-12);
        assert!((row.coefs[pos] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fixing() {
        let mut inst = pack();
        inst.variables[0].upper = 5.0;
        let fixed = fix_variable(&inst, 0, 1.0).unwrap();
        assert_eq!((fixed.variables[0].lower, fixed.variables[0].upper), (1.0, 1.0));
        assert!(matches!(fix_variable(&inst, 0, 7.0), Err(SimplexError::FixOutOfBounds { .. })));
        let before = solve_lp(&inst).unwrap().objective;
        let after = solve_lp(&fix_variable(&inst, 1, 0.25).unwrap()).unwrap().objective;
        assert!(after <= before + 1e-12);
    }

    #[test]
    fn equality_rows_and_negative_lower_bounds() {
        // min x1 + x2  s.t. x1 - x2 = 1, x1 in [-3, 3], x2 in [-2, 2]
        let mut inst = MilpInstance::new("eq", ObjSense::Min);
        let x1 = inst.add_variable(Variable::continuous("x1", -3.0, 3.0), 1.0);
        let x2 = inst.add_variable(Variable::continuous("x2", -2.0, 2.0), 1.0);
        inst.add_constraint("e", vec![(x1, 1.0), (x2, -1.0)], RowSense::Eq, 1.0);
        let sol = solve_lp(&inst).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert!((sol.objective + 3.0).abs() < 1e-9, "{}", sol.objective);
        assert!((sol.x[0] + 1.0).abs() < 1e-9 && (sol.x[1] + 2.0).abs() < 1e-9);
    }
}
