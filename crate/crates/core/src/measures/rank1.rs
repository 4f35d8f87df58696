//! Exact rank-1 relational adversary bound for Boolean input alphabets.
//!
//! For an output partition `(A, B)` with `X = f^-1(A)`, `Y = f^-1(B)`, the
//! bound is the optimum of
//!
//! ```text
//! maximize   sum_X w
//! subject to sum_X w = sum_Y w,  w >= 0,
//!            for every position i and bit b:
//!              sum_{x in X : x_i = b} w_x <= 1  or  sum_{y in Y : y_i != b} w_y <= 1
//! ```
//!
//! and the bound for `f` is the best partition. Groups where one side is an
//! empty sum hold trivially and are dropped.

use ratlp::{
    solve_disjunctive, Constraint, Direction, DisjunctiveError, DisjunctiveProgram, LinearProgram,
    LpOutcome, Rational, Relation,
};

use super::witness::Rank1Witness;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::function::{PartialFunction, Word};

/// The disjunctive program for one output partition, with its variable layout.
#[derive(Debug, Clone)]
pub struct Ca1Program {
    pub a: Vec<u8>,
    pub b: Vec<u8>,
    /// Variables `0..xs.len()` weight `xs`; the rest weight `ys`.
    pub xs: Vec<Word>,
    pub ys: Vec<Word>,
    pub program: DisjunctiveProgram,
}

pub fn ca1_program(f: &PartialFunction, a: &[u8]) -> Result<Ca1Program> {
    if f.g() != 2 {
        return Err(Error::NonBooleanAlphabet(f.g()));
    }
    let in_a = |o: u8| a.contains(&o);
    let b: Vec<u8> = (0..f.h() as u8).filter(|&o| !in_a(o)).collect();
    if a.is_empty() || b.is_empty() || a.iter().any(|&o| o as usize >= f.h()) {
        return Err(Error::InvalidPartition(format!("A = {a:?}, B = {b:?}")));
    }
    let xs: Vec<Word> = f
        .entries()
        .iter()
        .filter(|(_, o)| in_a(*o))
        .map(|(w, _)| w.clone())
        .collect();
    let ys: Vec<Word> = f
        .entries()
        .iter()
        .filter(|(_, o)| !in_a(*o))
        .map(|(w, _)| w.clone())
        .collect();
    if xs.is_empty() || ys.is_empty() {
        return Err(Error::InvalidPartition(
            "both sides of the partition must contain a domain word".into(),
        ));
    }
    let nx = xs.len();
    let num_vars = nx + ys.len();
    let mut objective = vec![Rational::zero(); num_vars];
    for c in &mut objective[..nx] {
        *c = Rational::one();
    }
    let mut base = LinearProgram::new(Direction::Maximize, objective)
        .map_err(|e| Error::Solver(e.to_string()))?;
    let balance = (0..nx)
        .map(|k| (k, Rational::one()))
        .chain((nx..num_vars).map(|k| (k, -Rational::one())));
    base.add_sparse(balance, Relation::Eq, Rational::zero())
        .expect("indices in range");
    let mut program = DisjunctiveProgram::new(base).map_err(|e| Error::Solver(e.to_string()))?;

    let mut seen: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for i in 0..f.n() {
        for bit in 0..2u8 {
            let x_side: Vec<usize> = (0..nx).filter(|&k| xs[k].get(i) == bit).collect();
            let y_side: Vec<usize> = (0..ys.len())
                .filter(|&k| ys[k].get(i) != bit)
                .map(|k| nx + k)
                .collect();
            if x_side.is_empty() || y_side.is_empty() {
                continue;
            }
            let key = (x_side, y_side);
            if seen.contains(&key) {
                continue;
            }
            let alt = |vars: &[usize]| {
                Constraint::sparse(
                    num_vars,
                    vars.iter().map(|&k| (k, Rational::one())),
                    Relation::Le,
                    Rational::one(),
                )
            };
            program
                .add_group(vec![alt(&key.0), alt(&key.1)])
                .map_err(|e| Error::Solver(e.to_string()))?;
            seen.push(key);
        }
    }
    Ok(Ca1Program {
        a: a.to_vec(),
        b,
        xs,
        ys,
        program,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ca1Solution {
    pub value: Rational,
    pub a: Vec<u8>,
    pub b: Vec<u8>,
    pub x_weights: Vec<(Word, Rational)>,
    pub y_weights: Vec<(Word, Rational)>,
}

impl Ca1Solution {
    /// The optimal weights as an (unnormalized) rank-1 witness.
    pub fn to_witness(&self) -> Rank1Witness {
        Rank1Witness {
            a: self.a.clone(),
            b: self.b.clone(),
            p: self
                .x_weights
                .iter()
                .filter(|(_, w)| !w.is_zero())
                .cloned()
                .collect(),
            q: self
                .y_weights
                .iter()
                .filter(|(_, w)| !w.is_zero())
                .cloned()
                .collect(),
        }
    }
}

/// Unordered two-class partitions of the achieved outputs; the smallest
/// achieved output always sits in `A`. Unachieved outputs go to `B`.
fn partitions(f: &PartialFunction) -> Vec<Vec<u8>> {
    let achieved = f.achieved_outputs();
    let rest = &achieved[1..];
    let k = rest.len();
    (0..(1u64 << k) - 1)
        .map(|mask| {
            let mut a = vec![achieved[0]];
            a.extend((0..k).filter(|j| mask & (1 << j) != 0).map(|j| rest[j]));
            a
        })
        .collect()
}

pub fn solve_partition(f: &PartialFunction, a: &[u8]) -> Result<Ca1Solution> {
    let prog = ca1_program(f, a)?;
    let (value, assignment) = match solve_disjunctive(&prog.program) {
        Ok(LpOutcome::Optimal { value, assignment }) => (value, assignment),
        Ok(other) => return Err(Error::Solver(format!("ca1 program returned {other:?}"))),
        Err(DisjunctiveError::UnboundedAllBranches) => {
            return Err(Error::Solver("ca1 program unbounded".into()))
        }
        Err(e) => return Err(Error::Solver(e.to_string())),
    };
    let nx = prog.xs.len();
    Ok(Ca1Solution {
        value,
        a: prog.a,
        b: prog.b,
        x_weights: prog
            .xs
            .into_iter()
            .zip(assignment[..nx].iter().cloned())
            .collect(),
        y_weights: prog
            .ys
            .into_iter()
            .zip(assignment[nx..].iter().cloned())
            .collect(),
    })
}

pub fn ca1_solution(f: &PartialFunction) -> Result<Ca1Solution> {
    if f.g() != 2 {
        return Err(Error::NonBooleanAlphabet(f.g()));
    }
    let parts = partitions(f);
    let solved = Exec::default().try_map(&parts, |a| solve_partition(f, a))?;
    let mut best: Option<Ca1Solution> = None;
    for s in solved {
        if best.as_ref().is_none_or(|b| s.value > b.value) {
            best = Some(s);
        }
    }
    best.ok_or(Error::ConstantFunction)
}

pub fn ca1(f: &PartialFunction) -> Result<Rational> {
    ca1_solution(f).map(|s| s.value)
}
