//! Maximization under "at least one of these constraints holds" groups.
//!
//! Solved by depth-first branch-and-bound: each node is the base program plus
//! one fixed alternative for some prefix of decisions. The node's relaxation
//! (unfixed groups dropped) bounds every completion from above, so a node
//! whose relaxation is no better than the incumbent is pruned. If the
//! relaxation's optimum already satisfies every group it is optimal for the
//! whole subtree; otherwise the first violated group (in the given order) is
//! branched on, alternatives in the given order. An unbounded relaxation
//! branches on the first unfixed group instead of pruning.

use thiserror::Error;

use crate::lp::{solve_with_extra, Constraint, Direction, LinearProgram, LpOutcome};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DisjunctiveError {
    #[error("disjunctive programs must maximize")]
    NotMaximize,
    #[error("group {group} has {len} alternatives; at least 2 are required")]
    TooFewAlternatives { group: usize, len: usize },
    #[error("group {group} alternative {alternative} has {got} coefficients, expected {expected}")]
    DimensionMismatch {
        group: usize,
        alternative: usize,
        expected: usize,
        got: usize,
    },
    /// Some complete selection of alternatives leaves the program unbounded.
    #[error("program is unbounded after resolving every disjunction")]
    UnboundedAllBranches,
}

/// A base program plus groups of alternative constraints, at least one per group must hold.
#[derive(Debug, Clone)]
pub struct DisjunctiveProgram {
    base: LinearProgram,
    groups: Vec<Vec<Constraint>>,
}

impl DisjunctiveProgram {
    pub fn new(base: LinearProgram) -> Result<Self, DisjunctiveError> {
        if base.direction() != Direction::Maximize {
            return Err(DisjunctiveError::NotMaximize);
        }
        Ok(DisjunctiveProgram {
            base,
            groups: Vec::new(),
        })
    }

    pub fn add_group(&mut self, alternatives: Vec<Constraint>) -> Result<(), DisjunctiveError> {
        let group = self.groups.len();
        if alternatives.len() < 2 {
            return Err(DisjunctiveError::TooFewAlternatives {
                group,
                len: alternatives.len(),
            });
        }
        let expected = self.base.num_vars();
        for (alternative, c) in alternatives.iter().enumerate() {
            if c.coeffs.len() != expected {
                return Err(DisjunctiveError::DimensionMismatch {
                    group,
                    alternative,
                    expected,
                    got: c.coeffs.len(),
                });
            }
        }
        self.groups.push(alternatives);
        Ok(())
    }

    pub fn base(&self) -> &LinearProgram {
        &self.base
    }

    pub fn groups(&self) -> &[Vec<Constraint>] {
        &self.groups
    }

    fn group_holds(&self, group: usize, point: &[Rational]) -> bool {
        self.groups[group].iter().any(|c| c.is_satisfied_by(point))
    }
}

/// Search statistics, mostly for tests and benchmarks.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: usize,
    pub pruned: usize,
}

pub fn solve_disjunctive(dp: &DisjunctiveProgram) -> Result<LpOutcome, DisjunctiveError> {
    solve_disjunctive_with_stats(dp).map(|(out, _)| out)
}

pub fn solve_disjunctive_with_stats(
    dp: &DisjunctiveProgram,
) -> Result<(LpOutcome, SearchStats), DisjunctiveError> {
    let mut search = Search {
        dp,
        fixed: vec![None; dp.groups.len()],
        incumbent: None,
        stats: SearchStats::default(),
    };
    search.explore()?;
    let outcome = match search.incumbent {
        Some((value, assignment)) => LpOutcome::Optimal { value, assignment },
        None => LpOutcome::Infeasible,
    };
    Ok((outcome, search.stats))
}

struct Search<'a> {
    dp: &'a DisjunctiveProgram,
    fixed: Vec<Option<usize>>,
    incumbent: Option<(Rational, Vec<Rational>)>,
    stats: SearchStats,
}

impl Search<'_> {
    fn explore(&mut self) -> Result<(), DisjunctiveError> {
        self.stats.nodes += 1;
        let extra: Vec<&Constraint> = self
            .fixed
            .iter()
            .enumerate()
            .filter_map(|(g, alt)| alt.map(|a| &self.dp.groups[g][a]))
            .collect();
        let branch_on = match solve_with_extra(&self.dp.base, &extra) {
            LpOutcome::Infeasible => {
                self.stats.pruned += 1;
                return Ok(());
            }
            LpOutcome::Unbounded => match self.fixed.iter().position(Option::is_none) {
                Some(g) => g,
                None => return Err(DisjunctiveError::UnboundedAllBranches),
            },
            LpOutcome::Optimal { value, assignment } => {
                if let Some((best, _)) = &self.incumbent {
                    if value <= *best {
                        self.stats.pruned += 1;
                        return Ok(());
                    }
                }
                let violated = (0..self.dp.groups.len())
                    .find(|&g| self.fixed[g].is_none() && !self.dp.group_holds(g, &assignment));
                match violated {
                    Some(g) => g,
                    None => {
                        self.incumbent = Some((value, assignment));
                        return Ok(());
                    }
                }
            }
        };
        for alt in 0..self.dp.groups[branch_on].len() {
            self.fixed[branch_on] = Some(alt);
            self.explore()?;
        }
        self.fixed[branch_on] = None;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::{solve_lp, Relation};

    fn int(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn box_program() -> LinearProgram {
        let mut lp = LinearProgram::new(Direction::Maximize, vec![int(1), int(1)]).unwrap();
        lp.set_upper_bound(0, int(5)).unwrap();
        lp.set_upper_bound(1, int(5)).unwrap();
        lp
    }

    #[test]
    fn picks_the_better_alternative() {
        let mut dp = DisjunctiveProgram::new(box_program()).unwrap();
        dp.add_group(vec![
            Constraint::sparse(2, [(0, int(1))], Relation::Le, int(1)),
            Constraint::sparse(2, [(1, int(1))], Relation::Le, int(1)),
        ])
        .unwrap();
        let out = solve_disjunctive(&dp).unwrap();
        assert_eq!(out.value(), Some(&int(6)));
    }

    #[test]
    fn no_groups_matches_plain_lp() {
        let dp = DisjunctiveProgram::new(box_program()).unwrap();
        assert_eq!(solve_disjunctive(&dp).unwrap(), solve_lp(&box_program()));
    }

    #[test]
    fn unbounded_relaxation_branches() {
        let lp = LinearProgram::new(Direction::Maximize, vec![int(1), int(1)]).unwrap();
        let mut dp = DisjunctiveProgram::new(lp).unwrap();
        dp.add_group(vec![
            Constraint::sparse(2, [(0, int(1)), (1, int(1))], Relation::Le, int(3)),
            Constraint::sparse(2, [(0, int(1)), (1, int(2))], Relation::Le, int(4)),
        ])
        .unwrap();
        assert_eq!(solve_disjunctive(&dp).unwrap().value(), Some(&int(4)));
    }

    #[test]
    fn unbounded_selection_is_an_error() {
        let lp = LinearProgram::new(Direction::Maximize, vec![int(1), int(1)]).unwrap();
        let mut dp = DisjunctiveProgram::new(lp).unwrap();
        dp.add_group(vec![
            Constraint::sparse(2, [(0, int(1))], Relation::Le, int(1)),
            Constraint::sparse(2, [(1, int(1))], Relation::Le, int(1)),
        ])
        .unwrap();
        assert_eq!(
            solve_disjunctive(&dp),
            Err(DisjunctiveError::UnboundedAllBranches)
        );
    }

    #[test]
    fn all_selections_infeasible() {
        let mut dp = DisjunctiveProgram::new(box_program()).unwrap();
        dp.add_group(vec![
            Constraint::sparse(2, [(0, int(1))], Relation::Ge, int(6)),
            Constraint::sparse(2, [(1, int(1))], Relation::Ge, int(6)),
        ])
        .unwrap();
        assert_eq!(solve_disjunctive(&dp).unwrap(), LpOutcome::Infeasible);
    }

    #[test]
    fn rejects_malformed_groups() {
        let lp = LinearProgram::new(Direction::Minimize, vec![int(1)]).unwrap();
        assert_eq!(
            DisjunctiveProgram::new(lp).unwrap_err(),
            DisjunctiveError::NotMaximize
        );
        let mut dp = DisjunctiveProgram::new(box_program()).unwrap();
        let c = Constraint::sparse(2, [(0, int(1))], Relation::Le, int(1));
        assert!(matches!(
            dp.add_group(vec![c.clone()]),
            Err(DisjunctiveError::TooFewAlternatives { .. })
        ));
        let short = Constraint::new(vec![int(1)], Relation::Le, int(1));
        assert!(matches!(
            dp.add_group(vec![c, short]),
            Err(DisjunctiveError::DimensionMismatch { .. })
        ));
    }
}
