//! Minimax over per-input distributions, computed through its weight-function form:
//!
//! minimize `max_x sum_i v_x(i)` subject to
//! `sum_{i : x_i != y_i} min(v_x(i), v_y(i)) >= 1` for every pair with `f(x) != f(y)`.
//!
//! Each `min` is replaced by an auxiliary `m_xyi <= v_x(i), v_y(i)`. Raising
//! `m_xyi` to the pointwise minimum keeps any feasible point feasible and the
//! objective ignores `m`, so the linear program has the same optimum.

use ratlp::{solve_lp, Direction, LinearProgram, LpOutcome, Rational, Relation};

use crate::error::{Error, Result};
use crate::function::{PartialFunction, Word};

/// Per-input position weights `v_x`, in lexicographic order of `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexWeighting {
    pub weights: Vec<(Word, Vec<Rational>)>,
}

impl IndexWeighting {
    pub fn get(&self, x: &Word) -> Option<&[Rational]> {
        self.weights
            .binary_search_by(|(w, _)| w.cmp(x))
            .ok()
            .map(|k| self.weights[k].1.as_slice())
    }

    /// `sum_{i : x_i != y_i} min(v_x(i), v_y(i))`.
    pub fn overlap(&self, x: &Word, y: &Word) -> Option<Rational> {
        let vx = self.get(x)?;
        let vy = self.get(y)?;
        Some(
            x.diff(y)
                .into_iter()
                .map(|i| vx[i].clone().min(vy[i].clone()))
                .sum(),
        )
    }

    /// The raw min-sum constraints, checked without any linearization.
    pub fn satisfies_min_sum(&self, f: &PartialFunction) -> bool {
        cross_pairs(f).all(|(x, y)| self.overlap(x, y).is_some_and(|s| s >= Rational::one()))
    }

    /// `max_x sum_i v_x(i)`.
    pub fn max_total(&self) -> Rational {
        self.weights
            .iter()
            .map(|(_, v)| v.iter().sum::<Rational>())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

/// Unordered pairs `x < y` with different outputs.
pub(crate) fn cross_pairs(f: &PartialFunction) -> impl Iterator<Item = (&Word, &Word)> {
    let entries = f.entries();
    entries.iter().enumerate().flat_map(move |(a, (x, fx))| {
        entries[a + 1..]
            .iter()
            .filter(move |(_, fy)| fy != fx)
            .map(move |(y, _)| (x, y))
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MmSolution {
    pub value: Rational,
    pub weights: IndexWeighting,
}

pub fn mm_solution(f: &PartialFunction) -> Result<MmSolution> {
    let n = f.n();
    let size = f.domain_size();
    let v = |x: usize, i: usize| 1 + x * n + i;
    let pairs: Vec<(usize, usize, Vec<usize>)> = {
        let entries = f.entries();
        let mut out = Vec::new();
        for a in 0..size {
            for b in a + 1..size {
                if entries[a].1 != entries[b].1 {
                    out.push((a, b, entries[a].0.diff(&entries[b].0)));
                }
            }
        }
        out
    };
    if pairs.is_empty() {
        return Err(Error::ConstantFunction);
    }
    let num_aux: usize = pairs.iter().map(|(_, _, d)| d.len()).sum();
    let first_aux = 1 + size * n;
    let num_vars = first_aux + num_aux;

    let mut objective = vec![Rational::zero(); num_vars];
    objective[0] = Rational::one();
    let mut lp = LinearProgram::new(Direction::Minimize, objective)
        .map_err(|e| Error::Solver(e.to_string()))?;
    let one = Rational::one;
    let minus_one = || -Rational::one();

    for x in 0..size {
        let terms = (0..n).map(|i| (v(x, i), one())).chain([(0, minus_one())]);
        lp.add_sparse(terms, Relation::Le, Rational::zero())
            .expect("indices in range");
    }
    let mut aux = first_aux;
    for (a, b, diff) in &pairs {
        let start = aux;
        for &i in diff {
            lp.add_sparse(
                [(aux, one()), (v(*a, i), minus_one())],
                Relation::Le,
                Rational::zero(),
            )
            .expect("indices in range");
            lp.add_sparse(
                [(aux, one()), (v(*b, i), minus_one())],
                Relation::Le,
                Rational::zero(),
            )
            .expect("indices in range");
            aux += 1;
        }
        lp.add_sparse((start..aux).map(|k| (k, one())), Relation::Ge, one())
            .expect("indices in range");
    }

    let (value, assignment) = match solve_lp(&lp) {
        LpOutcome::Optimal { value, assignment } => (value, assignment),
        other => return Err(Error::Solver(format!("mm program returned {other:?}"))),
    };
    let weights = f
        .entries()
        .iter()
        .enumerate()
        .map(|(x, (word, _))| {
            (
                word.clone(),
                (0..n).map(|i| assignment[v(x, i)].clone()).collect(),
            )
        })
        .collect();
    Ok(MmSolution {
        value,
        weights: IndexWeighting { weights },
    })
}

pub fn mm(f: &PartialFunction) -> Result<Rational> {
    mm_solution(f).map(|s| s.value)
}
