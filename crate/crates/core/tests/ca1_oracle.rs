//! Exact CA1 against an exhaustive choice of one alternative per (position, bit).

#[path = "../../ratlp/tests/support/oracle.rs"]
mod oracle;

use oracle::{enumerate_selections, Enumerated};
use qadv::constructions::{gen_gth, gen_osp, gen_random_partial, Budget};
use qadv::measures::{ca1, solve_partition};
use qadv::{PartialFunction, Rational};
use ratlp::{Constraint, Direction, DisjunctiveProgram, LinearProgram, Relation};

/// All `2n` groups, including trivially satisfied ones; nothing deduplicated.
fn full_program(f: &PartialFunction, a: &[u8]) -> DisjunctiveProgram {
    let xs: Vec<_> = f
        .entries()
        .iter()
        .filter(|(_, o)| a.contains(o))
        .map(|(w, _)| w)
        .collect();
    let ys: Vec<_> = f
        .entries()
        .iter()
        .filter(|(_, o)| !a.contains(o))
        .map(|(w, _)| w)
        .collect();
    let (nx, m) = (xs.len(), xs.len() + ys.len());
    let objective = (0..m)
        .map(|k| {
            if k < nx {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect();
    let mut base = LinearProgram::new(Direction::Maximize, objective).unwrap();
    let balance = (0..m)
        .map(|k| {
            if k < nx {
                Rational::one()
            } else {
                -Rational::one()
            }
        })
        .collect();
    base.add_constraint(Constraint::new(balance, Relation::Eq, Rational::zero()))
        .unwrap();
    let mut dp = DisjunctiveProgram::new(base).unwrap();
    for i in 0..f.n() {
        for b in 0..2u8 {
            let x_side = (0..m)
                .map(|k| u8::from(k < nx && xs[k].get(i) == b))
                .map(|c| Rational::from_integer(c.into()))
                .collect();
            let y_side = (0..m)
                .map(|k| u8::from(k >= nx && ys[k - nx].get(i) != b))
                .map(|c| Rational::from_integer(c.into()))
                .collect();
            dp.add_group(vec![
                Constraint::new(x_side, Relation::Le, Rational::one()),
                Constraint::new(y_side, Relation::Le, Rational::one()),
            ])
            .unwrap();
        }
    }
    dp
}

fn exhaustive(f: &PartialFunction, a: &[u8]) -> Rational {
    match enumerate_selections(&full_program(f, a)) {
        Enumerated::Optimal(v) => v,
        Enumerated::Infeasible => panic!("w = 0 is always feasible"),
    }
}

#[test]
fn gth4_by_all_selections() {
    let f = gen_gth(4).unwrap();
    assert_eq!(full_program(&f, &[0]).groups().len(), 8);
    let brute = exhaustive(&f, &[0]);
    assert_eq!(brute, Rational::from_integer(2));
    assert_eq!(solve_partition(&f, &[0]).unwrap().value, brute);
    assert_eq!(ca1(&f).unwrap(), brute);
}

#[test]
fn osp_by_all_selections() {
    for n in [2, 4] {
        let f = gen_osp(n).unwrap();
        assert_eq!(ca1(&f).unwrap(), exhaustive(&f, &[0]), "n = {n}");
    }
}

#[test]
fn random_functions_by_all_selections() {
    let budget = Budget::default();
    for seed in 0..60u64 {
        let n = 1 + (seed % 3) as usize;
        let h = 2 + (seed % 2) as usize;
        let f = gen_random_partial(n, 2, h, &Rational::new(3, 4), seed, &budget).unwrap();
        let achieved = f.achieved_outputs();
        let rest = &achieved[1..];
        let mut best: Option<Rational> = None;
        for mask in 0..(1u32 << rest.len()) - 1 {
            let mut a = vec![achieved[0]];
            a.extend(
                (0..rest.len())
                    .filter(|j| mask & (1 << j) != 0)
                    .map(|j| rest[j]),
            );
            let v = exhaustive(&f, &a);
            assert_eq!(
                solve_partition(&f, &a).unwrap().value,
                v,
                "seed {seed}, A = {a:?}"
            );
            best = Some(best.map_or(v.clone(), |b: Rational| b.max(v)));
        }
        assert_eq!(ca1(&f).unwrap(), best.unwrap(), "seed {seed}");
    }
}
