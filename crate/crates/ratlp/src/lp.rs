//! Linear programs over the rationals and a two-phase simplex solver.
//!
//! The solver keeps a dense tableau of [`Rational`]s and pivots with Bland's
//! rule in both phases, so it always terminates and its answers are exact.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

impl Relation {
    fn flipped(self) -> Self {
        match self {
            Relation::Le => Relation::Ge,
            Relation::Ge => Relation::Le,
            Relation::Eq => Relation::Eq,
        }
    }

    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Eq => lhs == rhs,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        })
    }
}

/// A single linear constraint `coeffs · x  (<=|>=|=)  rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        Constraint {
            coeffs,
            relation,
            rhs,
        }
    }

    /// Builds a dense constraint over `num_vars` variables from `(index, coefficient)` pairs.
    /// Repeated indices accumulate.
    pub fn sparse(
        num_vars: usize,
        terms: impl IntoIterator<Item = (usize, Rational)>,
        relation: Relation,
        rhs: Rational,
    ) -> Self {
        let mut coeffs = vec![Rational::zero(); num_vars];
        for (j, c) in terms {
            coeffs[j] += c;
        }
        Constraint::new(coeffs, relation, rhs)
    }

    pub fn lhs(&self, point: &[Rational]) -> Rational {
        dot(&self.coeffs, point)
    }

    pub fn is_satisfied_by(&self, point: &[Rational]) -> bool {
        self.relation.holds(&self.lhs(point), &self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("a linear program needs at least one variable")]
    NoVariables,
    #[error("dimension mismatch: expected {expected} entries, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("variable index {index} out of range for {num_vars} variables")]
    VariableOutOfRange { index: usize, num_vars: usize },
}

/// `optimize objective · x` subject to the constraints, `x >= 0` and any
/// per-variable upper bounds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearProgram {
    direction: Direction,
    objective: Vec<Rational>,
    constraints: Vec<Constraint>,
    upper_bounds: Vec<Option<Rational>>,
}

impl LinearProgram {
    pub fn new(direction: Direction, objective: Vec<Rational>) -> Result<Self, LpError> {
        if objective.is_empty() {
            return Err(LpError::NoVariables);
        }
        let m = objective.len();
        Ok(LinearProgram {
            direction,
            objective,
            constraints: Vec::new(),
            upper_bounds: vec![None; m],
        })
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn upper_bounds(&self) -> &[Option<Rational>] {
        &self.upper_bounds
    }

    pub fn add_constraint(&mut self, constraint: Constraint) -> Result<(), LpError> {
        self.check_len(constraint.coeffs.len())?;
        self.constraints.push(constraint);
        Ok(())
    }

    pub fn add_sparse(
        &mut self,
        terms: impl IntoIterator<Item = (usize, Rational)>,
        relation: Relation,
        rhs: Rational,
    ) -> Result<(), LpError> {
        let m = self.num_vars();
        let terms: Vec<_> = terms.into_iter().collect();
        if let Some(&(index, _)) = terms.iter().find(|(j, _)| *j >= m) {
            return Err(LpError::VariableOutOfRange { index, num_vars: m });
        }
        self.constraints
            .push(Constraint::sparse(m, terms, relation, rhs));
        Ok(())
    }

    pub fn set_upper_bound(&mut self, var: usize, bound: Rational) -> Result<(), LpError> {
        let m = self.num_vars();
        let slot = self
            .upper_bounds
            .get_mut(var)
            .ok_or(LpError::VariableOutOfRange {
                index: var,
                num_vars: m,
            })?;
        *slot = Some(bound);
        Ok(())
    }

    pub fn objective_value(&self, point: &[Rational]) -> Rational {
        dot(&self.objective, point)
    }

    fn check_len(&self, got: usize) -> Result<(), LpError> {
        if got != self.num_vars() {
            Err(LpError::DimensionMismatch {
                expected: self.num_vars(),
                got,
            })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum LpOutcome {
    Optimal {
        value: Rational,
        assignment: Vec<Rational>,
    },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn assignment(&self) -> Option<&[Rational]> {
        match self {
            LpOutcome::Optimal { assignment, .. } => Some(assignment),
            _ => None,
        }
    }

    pub fn is_optimal(&self) -> bool {
        matches!(self, LpOutcome::Optimal { .. })
    }
}

/// True iff `point` satisfies every constraint, non-negativity and every upper bound exactly.
pub fn check_feasible(lp: &LinearProgram, point: &[Rational]) -> Result<bool, LpError> {
    lp.check_len(point.len())?;
    let bounds_ok = point
        .iter()
        .zip(&lp.upper_bounds)
        .all(|(x, ub)| !x.is_negative() && ub.as_ref().is_none_or(|u| x <= u));
    Ok(bounds_ok && lp.constraints.iter().all(|c| c.is_satisfied_by(point)))
}

/// Solves `lp` exactly.
pub fn solve_lp(lp: &LinearProgram) -> LpOutcome {
    solve_with_extra(lp, &[])
}

/// Solves `lp` with `extra` constraints appended, without cloning the program.
pub(crate) fn solve_with_extra(lp: &LinearProgram, extra: &[&Constraint]) -> LpOutcome {
    let nv = lp.num_vars();
    let bound_rows: Vec<Constraint> = lp
        .upper_bounds
        .iter()
        .enumerate()
        .filter_map(|(j, ub)| {
            ub.as_ref()
                .map(|u| Constraint::sparse(nv, [(j, Rational::one())], Relation::Le, u.clone()))
        })
        .collect();
    let rows: Vec<&Constraint> = lp
        .constraints
        .iter()
        .chain(bound_rows.iter())
        .chain(extra.iter().copied())
        .collect();

    let mut tableau = Tableau::build(nv, &rows);
    if tableau.has_artificials() {
        tableau.set_phase_one_costs();
        match tableau.run() {
            Ok(()) => {}
            // Phase one is bounded above by zero.
            Err(Unbounded) => unreachable!("phase-one objective is bounded"),
        }
        if !tableau.drive_out_artificials() {
            return LpOutcome::Infeasible;
        }
    }
    let costs: Vec<Rational> = match lp.direction {
        Direction::Maximize => lp.objective.clone(),
        Direction::Minimize => lp.objective.iter().map(|c| -c).collect(),
    };
    tableau.set_costs(&costs);
    match tableau.run() {
        Ok(()) => {
            let assignment = tableau.assignment();
            let value = lp.objective_value(&assignment);
            LpOutcome::Optimal { value, assignment }
        }
        Err(Unbounded) => LpOutcome::Unbounded,
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

struct Unbounded;

/// Dense simplex tableau. Columns are laid out as
/// `[structural | slack/surplus | artificial]`.
struct Tableau {
    num_structural: usize,
    first_artificial: usize,
    num_cols: usize,
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    /// Reduced costs `c_j - c_B B^-1 A_j` of the current (maximization) objective.
    reduced: Vec<Rational>,
    /// Artificial columns are barred from re-entering once phase one ends.
    barred: Vec<bool>,
}

impl Tableau {
    fn build(nv: usize, constraints: &[&Constraint]) -> Self {
        let mut num_slack = 0;
        let mut num_art = 0;
        let normalized: Vec<(bool, Relation)> = constraints
            .iter()
            .map(|c| {
                let negate = c.rhs.is_negative();
                let rel = if negate {
                    c.relation.flipped()
                } else {
                    c.relation
                };
                match rel {
                    Relation::Le => num_slack += 1,
                    Relation::Ge => {
                        num_slack += 1;
                        num_art += 1;
                    }
                    Relation::Eq => num_art += 1,
                }
                (negate, rel)
            })
            .collect();

        let first_artificial = nv + num_slack;
        let num_cols = first_artificial + num_art;
        let mut rows = Vec::with_capacity(constraints.len());
        let mut rhs = Vec::with_capacity(constraints.len());
        let mut basis = Vec::with_capacity(constraints.len());
        let mut next_slack = nv;
        let mut next_art = first_artificial;
        for (c, &(negate, rel)) in constraints.iter().zip(&normalized) {
            let mut row = vec![Rational::zero(); num_cols];
            for (j, a) in c.coeffs.iter().enumerate() {
                if !a.is_zero() {
                    row[j] = if negate { -a } else { a.clone() };
                }
            }
            match rel {
                Relation::Le => {
                    row[next_slack] = Rational::one();
                    basis.push(next_slack);
                    next_slack += 1;
                }
                Relation::Ge => {
                    row[next_slack] = -Rational::one();
                    next_slack += 1;
                    row[next_art] = Rational::one();
                    basis.push(next_art);
                    next_art += 1;
                }
                Relation::Eq => {
                    row[next_art] = Rational::one();
                    basis.push(next_art);
                    next_art += 1;
                }
            }
            rows.push(row);
            rhs.push(if negate { -&c.rhs } else { c.rhs.clone() });
        }
        Tableau {
            num_structural: nv,
            first_artificial,
            num_cols,
            rows,
            rhs,
            basis,
            reduced: vec![Rational::zero(); num_cols],
            barred: vec![false; num_cols],
        }
    }

    fn has_artificials(&self) -> bool {
        self.first_artificial < self.num_cols
    }

    fn is_artificial(&self, col: usize) -> bool {
        col >= self.first_artificial
    }

    fn set_phase_one_costs(&mut self) {
        let costs: Vec<Rational> = (0..self.num_cols)
            .map(|j| {
                if self.is_artificial(j) {
                    -Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        self.load_costs(costs);
    }

    /// Installs a phase-two objective given over the structural columns.
    fn set_costs(&mut self, structural: &[Rational]) {
        let mut costs = vec![Rational::zero(); self.num_cols];
        costs[..structural.len()].clone_from_slice(structural);
        self.load_costs(costs);
    }

    fn load_costs(&mut self, costs: Vec<Rational>) {
        let mut reduced = costs.clone();
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for (d, a) in reduced.iter_mut().zip(row) {
                if !a.is_zero() {
                    d.sub_mul(cb, a);
                }
            }
        }
        self.reduced = reduced;
    }

    /// Bland's rule: lowest-index improving column enters; ratio ties leave by lowest basic index.
    fn run(&mut self) -> Result<(), Unbounded> {
        loop {
            let entering =
                (0..self.num_cols).find(|&j| !self.barred[j] && self.reduced[j].is_positive());
            let Some(e) = entering else {
                return Ok(());
            };
            let mut best: Option<(usize, Rational)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                let a = &row[e];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[r] / a;
                let better = match &best {
                    None => true,
                    Some((br, bratio)) => {
                        ratio < *bratio || (ratio == *bratio && self.basis[r] < self.basis[*br])
                    }
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            let Some((r, _)) = best else {
                return Err(Unbounded);
            };
            self.pivot(r, e);
        }
    }

    fn pivot(&mut self, r: usize, e: usize) {
        let inv = self.rows[r][e].recip().expect("pivot element is nonzero");
        let mut pivot_row = std::mem::take(&mut self.rows[r]);
        let nonzero: Vec<usize> = (0..self.num_cols)
            .filter(|&j| !pivot_row[j].is_zero())
            .collect();
        for &j in &nonzero {
            pivot_row[j] = &pivot_row[j] * &inv;
        }
        let pivot_rhs = &self.rhs[r] * &inv;

        for (k, row) in self.rows.iter_mut().enumerate() {
            if k == r || row[e].is_zero() {
                continue;
            }
            let factor = row[e].clone();
            for &j in &nonzero {
                row[j].sub_mul(&factor, &pivot_row[j]);
            }
            self.rhs[k].sub_mul(&factor, &pivot_rhs);
        }
        if !self.reduced[e].is_zero() {
            let factor = self.reduced[e].clone();
            for &j in &nonzero {
                self.reduced[j].sub_mul(&factor, &pivot_row[j]);
            }
        }
        self.rows[r] = pivot_row;
        self.rhs[r] = pivot_rhs;
        self.basis[r] = e;
    }

    /// Ends phase one. Returns `false` if the program is infeasible; otherwise
    /// pivots every zero-level artificial out of the basis (dropping redundant
    /// rows) and bars artificial columns.
    fn drive_out_artificials(&mut self) -> bool {
        let infeasible = self
            .basis
            .iter()
            .zip(&self.rhs)
            .any(|(&b, v)| self.is_artificial(b) && v.is_positive());
        if infeasible {
            return false;
        }
        let mut r = 0;
        while r < self.rows.len() {
            if self.is_artificial(self.basis[r]) {
                let replacement = (0..self.first_artificial).find(|&j| !self.rows[r][j].is_zero());
                match replacement {
                    Some(j) => {
                        self.pivot(r, j);
                        r += 1;
                    }
                    None => {
                        self.rows.remove(r);
                        self.rhs.remove(r);
                        self.basis.remove(r);
                    }
                }
            } else {
                r += 1;
            }
        }
        for j in self.first_artificial..self.num_cols {
            self.barred[j] = true;
        }
        true
    }

    fn assignment(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.num_structural];
        for (&b, v) in self.basis.iter().zip(&self.rhs) {
            if b < self.num_structural {
                x[b] = v.clone();
            }
        }
        x
    }
}
