//! Brute-force reference solvers, independent of the simplex implementation.
//!
//! Shared by this crate's integration tests and the workspace acceptance suite
//! (included there by path).

#![allow(dead_code)]

use rand::Rng;
use ratlp::{
    solve_lp, Constraint, Direction, DisjunctiveProgram, LinearProgram, LpOutcome, Rational,
    Relation,
};

/// Result of vertex enumeration on a box-bounded program.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Enumerated {
    Optimal(Rational),
    Infeasible,
}

/// A hyperplane `coeffs · x = rhs`.
struct Plane {
    coeffs: Vec<Rational>,
    rhs: Rational,
}

fn planes(lp: &LinearProgram) -> Vec<Plane> {
    let m = lp.num_vars();
    let mut out: Vec<Plane> = lp
        .constraints()
        .iter()
        .map(|c| Plane {
            coeffs: c.coeffs.clone(),
            rhs: c.rhs.clone(),
        })
        .collect();
    for j in 0..m {
        let unit: Vec<Rational> = (0..m)
            .map(|k| {
                if k == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        out.push(Plane {
            coeffs: unit.clone(),
            rhs: Rational::zero(),
        });
        if let Some(u) = &lp.upper_bounds()[j] {
            out.push(Plane {
                coeffs: unit,
                rhs: u.clone(),
            });
        }
    }
    out
}

/// Gauss-Jordan elimination; `None` unless the square system has a unique solution.
pub fn solve_square(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let m = b.len();
    for col in 0..m {
        let pivot = (col..m).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip().unwrap();
        for j in 0..m {
            a[col][j] = &a[col][j] * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..m {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for j in 0..m {
                    let delta = &factor * &a[col][j];
                    a[r][j] = &a[r][j] - &delta;
                }
                let delta = &factor * &b[col];
                b[r] = &b[r] - &delta;
            }
        }
    }
    Some(b)
}

pub fn feasible(lp: &LinearProgram, x: &[Rational]) -> bool {
    for (j, xj) in x.iter().enumerate() {
        if xj.is_negative() {
            return false;
        }
        if let Some(u) = &lp.upper_bounds()[j] {
            if xj > u {
                return false;
            }
        }
    }
    lp.constraints().iter().all(|c| {
        let lhs: Rational = c.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
        match c.relation {
            Relation::Le => lhs <= c.rhs,
            Relation::Ge => lhs >= c.rhs,
            Relation::Eq => lhs == c.rhs,
        }
    })
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// All basic feasible solutions of a program whose variables are all box-bounded.
pub fn vertices(lp: &LinearProgram) -> Vec<Vec<Rational>> {
    assert!(
        lp.upper_bounds().iter().all(Option::is_some),
        "vertex enumeration needs every variable bounded"
    );
    let m = lp.num_vars();
    let planes = planes(lp);
    let mut out: Vec<Vec<Rational>> = Vec::new();
    for subset in subsets(planes.len(), m) {
        let a = subset.iter().map(|&p| planes[p].coeffs.clone()).collect();
        let b = subset.iter().map(|&p| planes[p].rhs.clone()).collect();
        if let Some(x) = solve_square(a, b) {
            if feasible(lp, &x) && !out.contains(&x) {
                out.push(x);
            }
        }
    }
    out
}

pub fn brute_force_lp(lp: &LinearProgram) -> Enumerated {
    let values = vertices(lp).into_iter().map(|x| {
        lp.objective()
            .iter()
            .zip(&x)
            .map(|(c, v)| c * v)
            .sum::<Rational>()
    });
    let best = match lp.direction() {
        Direction::Maximize => values.max(),
        Direction::Minimize => values.min(),
    };
    best.map_or(Enumerated::Infeasible, Enumerated::Optimal)
}

/// Best value over every explicit choice of one alternative per group.
pub fn enumerate_selections(dp: &DisjunctiveProgram) -> Enumerated {
    let groups = dp.groups();
    let mut choice = vec![0usize; groups.len()];
    let mut best: Option<Rational> = None;
    loop {
        let mut lp = dp.base().clone();
        for (g, &a) in choice.iter().enumerate() {
            lp.add_constraint(groups[g][a].clone()).unwrap();
        }
        match solve_lp(&lp) {
            LpOutcome::Optimal { value, .. } => {
                if best.as_ref().is_none_or(|b| value > *b) {
                    best = Some(value);
                }
            }
            LpOutcome::Infeasible => {}
            LpOutcome::Unbounded => panic!("oracle instances are box-bounded"),
        }
        // Odometer increment.
        let mut g = 0;
        loop {
            if g == groups.len() {
                return best.map_or(Enumerated::Infeasible, Enumerated::Optimal);
            }
            choice[g] += 1;
            if choice[g] < groups[g].len() {
                break;
            }
            choice[g] = 0;
            g += 1;
        }
    }
}

fn small_int<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> Rational {
    Rational::from_integer(rng.random_range(lo..=hi))
}

fn random_relation<R: Rng>(rng: &mut R) -> Relation {
    match rng.random_range(0..5) {
        0 | 1 => Relation::Le,
        2 | 3 => Relation::Ge,
        _ => Relation::Eq,
    }
}

/// Up to 4 variables, up to 6 constraints, coefficients in -3..=3, every variable boxed.
pub fn random_lp<R: Rng>(rng: &mut R) -> LinearProgram {
    let m = rng.random_range(1..=4);
    let direction = if rng.random_bool(0.5) {
        Direction::Maximize
    } else {
        Direction::Minimize
    };
    let objective = (0..m).map(|_| small_int(rng, -3, 3)).collect();
    let mut lp = LinearProgram::new(direction, objective).unwrap();
    for j in 0..m {
        lp.set_upper_bound(j, small_int(rng, 0, 5)).unwrap();
    }
    for _ in 0..rng.random_range(0..=6) {
        let coeffs = (0..m).map(|_| small_int(rng, -3, 3)).collect();
        let rel = random_relation(rng);
        let rhs = small_int(rng, -3, 6);
        lp.add_constraint(Constraint::new(coeffs, rel, rhs))
            .unwrap();
    }
    lp
}

/// A maximization program over up to 3 boxed variables with `groups` two-or-three-way disjunctions.
pub fn random_disjunctive<R: Rng>(rng: &mut R, groups: usize) -> DisjunctiveProgram {
    let m = rng.random_range(1..=3);
    let objective = (0..m).map(|_| small_int(rng, -1, 3)).collect();
    let mut lp = LinearProgram::new(Direction::Maximize, objective).unwrap();
    for j in 0..m {
        lp.set_upper_bound(j, small_int(rng, 1, 6)).unwrap();
    }
    for _ in 0..rng.random_range(0..=2) {
        let coeffs = (0..m).map(|_| small_int(rng, -2, 3)).collect();
        lp.add_constraint(Constraint::new(coeffs, Relation::Le, small_int(rng, 0, 8)))
            .unwrap();
    }
    let mut dp = DisjunctiveProgram::new(lp).unwrap();
    let max_alts = if groups <= 6 { 3 } else { 2 };
    for _ in 0..groups {
        let alts = (0..rng.random_range(2..=max_alts))
            .map(|_| {
                let coeffs = (0..m).map(|_| small_int(rng, -2, 3)).collect();
                let rel = if rng.random_bool(0.8) {
                    Relation::Le
                } else {
                    Relation::Ge
                };
                Constraint::new(coeffs, rel, small_int(rng, -1, 6))
            })
            .collect();
        dp.add_group(alts).unwrap();
    }
    dp
}
