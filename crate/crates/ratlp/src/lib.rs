//! Exact rational linear programming.
//!
//! [`solve_lp`] is a two-phase dense simplex over arbitrary-precision
//! rationals using Bland's pivoting rule. [`solve_disjunctive`] adds groups of
//! alternative constraints ("at least one holds") and resolves them by
//! branch-and-bound on top of the simplex.

mod disjunctive;
mod lp;
mod rational;

pub use disjunctive::{
    solve_disjunctive, solve_disjunctive_with_stats, DisjunctiveError, DisjunctiveProgram,
    SearchStats,
};
pub use lp::{
    check_feasible, solve_lp, Constraint, Direction, LinearProgram, LpError, LpOutcome, Relation,
};
pub use rational::{ParseRationalError, Rational};
