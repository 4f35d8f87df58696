//! Fractional block sensitivity and fractional certificate complexity.
//!
//! Both programs are posed over the inclusion-minimal sensitive blocks only.
//! Shifting the weight of a block onto a minimal sub-block never violates a
//! packing constraint (nor the size budget of the parametrized variant), and a
//! covering constraint for a block is implied by the one for any sub-block,
//! so the optima are unchanged.

use ratlp::{solve_lp, Direction, LinearProgram, LpOutcome, Rational, Relation};
use serde::{Deserialize, Serialize};

use super::{max_over_domain, Maximum};
use crate::error::{Error, Result};
use crate::function::{Block, PartialFunction, Word};

/// Weights on the sensitive blocks of `base`; each block carries a witness word realizing it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockWeighting {
    pub base: Word,
    pub weights: Vec<WeightedBlock>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedBlock {
    /// 0-based positions.
    pub block: Vec<usize>,
    pub witness: Word,
    pub weight: Rational,
}

impl BlockWeighting {
    pub fn total(&self) -> Rational {
        self.weights.iter().map(|b| &b.weight).sum()
    }

    /// Weights in `[0,1]` and every position covered at most once.
    pub fn is_feasible(&self, n: usize) -> bool {
        let mut load = vec![Rational::zero(); n];
        for b in &self.weights {
            if b.weight.is_negative() || b.weight > Rational::one() {
                return false;
            }
            for &i in &b.block {
                load[i] += &b.weight;
            }
        }
        load.iter().all(|l| *l <= Rational::one())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FbsSolution {
    pub value: Rational,
    pub weighting: BlockWeighting,
}

fn minimal_with_witnesses(f: &PartialFunction, x: &Word) -> Result<Vec<(Block, Word)>> {
    let family = f.sensitive_blocks(x)?;
    let minimal = family.minimal_blocks();
    Ok(family
        .blocks
        .into_iter()
        .filter(|(b, _)| minimal.contains(b))
        .collect())
}

fn packing_program(n: usize, blocks: &[(Block, Word)], budget: Option<&Rational>) -> LinearProgram {
    let m = blocks.len();
    let mut lp = LinearProgram::new(Direction::Maximize, vec![Rational::one(); m])
        .expect("sensitive block families of a non-constant function are non-empty");
    for i in 0..n {
        let terms: Vec<_> = blocks
            .iter()
            .enumerate()
            .filter(|(_, (b, _))| b.contains(i))
            .map(|(k, _)| (k, Rational::one()))
            .collect();
        if !terms.is_empty() {
            lp.add_sparse(terms, Relation::Le, Rational::one())
                .expect("indices in range");
        }
    }
    // `w <= 1` is implied: every block is non-empty and each position carries load at most 1.
    if let Some(budget) = budget {
        let terms = blocks
            .iter()
            .enumerate()
            .map(|(k, (b, _))| (k, Rational::from(b.len())));
        lp.add_sparse(terms, Relation::Le, budget.clone())
            .expect("indices in range");
    }
    lp
}

fn optimal(out: LpOutcome, what: &str) -> Result<(Rational, Vec<Rational>)> {
    match out {
        LpOutcome::Optimal { value, assignment } => Ok((value, assignment)),
        other => Err(Error::Solver(format!("{what} program returned {other:?}"))),
    }
}

fn solve_packing(f: &PartialFunction, x: &Word, budget: Option<&Rational>) -> Result<FbsSolution> {
    let blocks = minimal_with_witnesses(f, x)?;
    let lp = packing_program(f.n(), &blocks, budget);
    let (value, assignment) = optimal(solve_lp(&lp), "fbs")?;
    let weights = blocks
        .into_iter()
        .zip(assignment)
        .map(|((block, witness), weight)| WeightedBlock {
            block: block.indices().to_vec(),
            witness,
            weight,
        })
        .collect();
    Ok(FbsSolution {
        value,
        weighting: BlockWeighting {
            base: x.clone(),
            weights,
        },
    })
}

/// Fractional block sensitivity at `x` with an optimal weighting.
pub fn fbs_solution(f: &PartialFunction, x: &Word) -> Result<FbsSolution> {
    solve_packing(f, x, None)
}

pub fn fbs_at(f: &PartialFunction, x: &Word) -> Result<Rational> {
    fbs_solution(f, x).map(|s| s.value)
}

pub fn fbs(f: &PartialFunction) -> Result<Maximum<Rational>> {
    max_over_domain(f, |x| fbs_at(f, x))
}

/// The fbs program with the extra budget `sum |B| w(B) <= budget`, `0 <= budget <= n`.
pub fn fbs_parametrized(f: &PartialFunction, x: &Word, budget: &Rational) -> Result<Rational> {
    if budget.is_negative() || *budget > Rational::from(f.n()) {
        return Err(Error::ParameterOutOfRange(format!(
            "budget {budget} outside [0, {}]",
            f.n()
        )));
    }
    solve_packing(f, x, Some(budget)).map(|s| s.value)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FcSolution {
    pub value: Rational,
    /// One weight per position.
    pub weights: Vec<Rational>,
}

/// Fractional certificate complexity at `x`: minimum total position weight
/// such that every sensitive block carries weight at least 1.
pub fn fc_solution(f: &PartialFunction, x: &Word) -> Result<FcSolution> {
    let n = f.n();
    let blocks = f.sensitive_blocks(x)?.minimal_blocks();
    let mut lp = LinearProgram::new(Direction::Minimize, vec![Rational::one(); n])
        .map_err(|e| Error::Solver(e.to_string()))?;
    for b in &blocks {
        let terms = b.indices().iter().map(|&i| (i, Rational::one()));
        lp.add_sparse(terms, Relation::Ge, Rational::one())
            .expect("indices in range");
    }
    let (value, weights) = optimal(solve_lp(&lp), "fc")?;
    Ok(FcSolution { value, weights })
}

pub fn fc_at(f: &PartialFunction, x: &Word) -> Result<Rational> {
    fc_solution(f, x).map(|s| s.value)
}

pub fn fc(f: &PartialFunction) -> Result<Maximum<Rational>> {
    max_over_domain(f, |x| fc_at(f, x))
}
