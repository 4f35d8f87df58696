//! Generators for the separating families and for test corpora.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use ratlp::Rational;

use crate::error::{Error, Result};
use crate::function::{PartialFunction, Word};

/// Size limits for generated domains and enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest domain `|S|` a generator may produce.
    pub max_domain: u128,
    /// Largest cube `g^n` that may be materialized.
    pub max_cube: u128,
    /// Largest number of output tables `gen_all_total` may walk.
    pub max_tables: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_domain: 20_000,
            max_cube: 1_000_000,
            max_tables: 1 << 20,
        }
    }
}

fn check_even(n: usize) -> Result<()> {
    if n % 2 == 1 {
        return Err(Error::OddArity(n));
    }
    if n == 0 {
        return Err(Error::ParameterOutOfRange(
            "arity must be at least 2".into(),
        ));
    }
    Ok(())
}

fn unit(n: usize, i: usize) -> Word {
    let mut s = vec![0; n];
    s[i] = 1;
    Word::new(s)
}

/// Weight-one words; output 1 iff the 1 sits in the second half.
pub fn gen_gth(n: usize) -> Result<PartialFunction> {
    check_even(n)?;
    PartialFunction::new(n, 2, 2, (0..n).map(|i| (unit(n, i), u8::from(i >= n / 2))))
}

/// `0^i 1^(n-i)`, the word with index `i`.
pub fn osp_word(n: usize, i: usize) -> Word {
    Word::new((0..n).map(|k| u8::from(k >= i)).collect())
}

/// Words `0^i 1^(n-i)` with output `i mod 2`.
pub fn gen_osp(n: usize) -> Result<PartialFunction> {
    check_even(n)?;
    PartialFunction::new(n, 2, 2, (0..=n).map(|i| (osp_word(n, i), (i % 2) as u8)))
}

/// Total `OR_n`.
pub fn or_total(n: usize) -> Result<PartialFunction> {
    if n == 0 || n > 20 {
        return Err(Error::ParameterOutOfRange(format!(
            "OR arity {n} outside 1..=20"
        )));
    }
    PartialFunction::new(
        n,
        2,
        2,
        (0..1usize << n).map(|v| {
            let w = index_word(v as u128, n, 2);
            let out = u8::from(v != 0);
            (w, out)
        }),
    )
}

/// The `v`-th word of `G^n` in lexicographic order.
fn index_word(mut v: u128, n: usize, g: usize) -> Word {
    let mut s = vec![0u8; n];
    for k in (0..n).rev() {
        s[k] = (v % g as u128) as u8;
        v /= g as u128;
    }
    Word::new(s)
}

/// `PG(2, t)` over the integers mod a prime `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectivePlane {
    pub order: usize,
    /// Normalized homogeneous coordinates, lexicographically ordered.
    pub points: Vec<[usize; 3]>,
    /// Each line as the sorted indices of its points; line `k` has coordinates `points[k]`.
    pub lines: Vec<Vec<usize>>,
}

fn is_prime(t: usize) -> bool {
    t >= 2
        && (2..t)
            .take_while(|d| d * d <= t)
            .all(|d| !t.is_multiple_of(d))
}

pub fn gen_projective_plane(t: usize) -> Result<ProjectivePlane> {
    if !is_prime(t) {
        return Err(Error::NotPrime(t));
    }
    if t > 13 {
        return Err(Error::OrderTooLarge(t));
    }
    // Representatives with first nonzero coordinate 1, in lexicographic order.
    let mut points = Vec::new();
    for a in 0..t {
        for b in 0..t {
            for c in 0..t {
                let v = [a, b, c];
                if v.iter().find(|&&e| e != 0) == Some(&1) {
                    points.push(v);
                }
            }
        }
    }
    let lines = points
        .iter()
        .map(|l| {
            (0..points.len())
                .filter(|&k| {
                    let p = points[k];
                    (l[0] * p[0] + l[1] * p[1] + l[2] * p[2]) % t == 0
                })
                .collect()
        })
        .collect();
    Ok(ProjectivePlane {
        order: t,
        points,
        lines,
    })
}

impl ProjectivePlane {
    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn line_word(&self, k: usize) -> Word {
        let mut s = vec![0; self.num_points()];
        for &p in &self.lines[k] {
            s[p] = 1;
        }
        Word::new(s)
    }
}

/// `0^l -> 0` and every line indicator `-> 1`, with `l = t^2 + t + 1`.
pub fn gen_fpp(t: usize) -> Result<PartialFunction> {
    let plane = gen_projective_plane(t)?;
    let l = plane.num_points();
    let lines = (0..l).map(|k| (plane.line_word(k), 1));
    PartialFunction::new(
        l,
        2,
        2,
        std::iter::once((Word::new(vec![0; l]), 0)).chain(lines),
    )
}

/// `OR_k(f(x1), ..., f(xk))` on the domain `S^k`.
pub fn compose_or(f: &PartialFunction, k: usize, budget: &Budget) -> Result<PartialFunction> {
    if f.h() != 2 {
        return Err(Error::NonBooleanOutput(f.h()));
    }
    if k == 0 {
        return Err(Error::ParameterOutOfRange("k must be at least 1".into()));
    }
    let size = (f.domain_size() as u128)
        .checked_pow(k as u32)
        .unwrap_or(u128::MAX);
    if size > budget.max_domain {
        return Err(Error::DomainBudgetExceeded {
            size,
            budget: budget.max_domain,
        });
    }
    let mut table: Vec<(Vec<&Word>, u8)> = vec![(Vec::new(), 0)];
    for _ in 0..k {
        table = table
            .into_iter()
            .flat_map(|(parts, out)| {
                f.entries().iter().map(move |(w, o)| {
                    let mut p = parts.clone();
                    p.push(w);
                    (p, out | o)
                })
            })
            .collect();
    }
    PartialFunction::new(
        f.n() * k,
        f.g(),
        2,
        table.into_iter().map(|(p, o)| (Word::concat(&p), o)),
    )
}

fn cube_size(n: usize, g: usize, budget: &Budget) -> Result<u128> {
    let size = (g as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > budget.max_cube {
        return Err(Error::BudgetExceeded {
            size,
            budget: budget.max_cube,
        });
    }
    Ok(size)
}

/// A seeded random partial function.
///
/// With `total = g^n` and `size = max(2, floor(fraction * total + 1/2))`, a
/// SplitMix64 stream seeded with `seed` is consumed as follows:
///
/// 1. Domain: a partial Fisher-Yates shuffle of the word indices `0..total`.
///    For `k` in `0..size`, draw `r = next_u64()`, swap positions `k` and
///    `k + r % (total - k)`. The first `size` indices, sorted, form `S`.
/// 2. Outputs: for each word of `S` in lexicographic order, `next_u64() % h`.
///    If all outputs coincide, draw a fresh output vector and repeat.
///
/// Index `v` names the word whose base-`g` digits, most significant first, are `v`.
pub fn gen_random_partial(
    n: usize,
    g: usize,
    h: usize,
    fraction: &Rational,
    seed: u64,
    budget: &Budget,
) -> Result<PartialFunction> {
    if n == 0 || !(1..=36).contains(&g) || !(2..=36).contains(&h) {
        return Err(Error::ParameterOutOfRange(format!(
            "need n >= 1, 1 <= g <= 36, 2 <= h <= 36 (got n={n}, g={g}, h={h})"
        )));
    }
    if !fraction.is_positive() || *fraction > Rational::one() {
        return Err(Error::ParameterOutOfRange(format!(
            "domain fraction {fraction} outside (0, 1]"
        )));
    }
    let total = cube_size(n, g, budget)?;
    if total < 2 {
        return Err(Error::ParameterOutOfRange(
            "the cube has fewer than two words".into(),
        ));
    }
    let scaled = (fraction * &Rational::from(total as usize) + Rational::new(1, 2)).floor();
    let size = u128::try_from(scaled)
        .unwrap_or(u128::MAX)
        .max(2)
        .min(total);
    if size > budget.max_domain {
        return Err(Error::DomainBudgetExceeded {
            size,
            budget: budget.max_domain,
        });
    }
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut indices: Vec<u128> = (0..total).collect();
    for k in 0..size as usize {
        let span = (total - k as u128) as u64;
        let j = k + (rng.next_u64() % span) as usize;
        indices.swap(k, j);
    }
    let mut domain = indices[..size as usize].to_vec();
    domain.sort_unstable();
    let outputs = loop {
        let outs: Vec<u8> = domain
            .iter()
            .map(|_| (rng.next_u64() % h as u64) as u8)
            .collect();
        if outs.iter().any(|&o| o != outs[0]) {
            break outs;
        }
    };
    PartialFunction::new(
        n,
        g,
        h,
        domain
            .into_iter()
            .zip(outputs)
            .map(|(v, o)| (index_word(v, n, g), o)),
    )
}

/// Every non-constant total function `G^n -> H`, ordered lexicographically by
/// output table (the table lists outputs in lexicographic word order).
pub fn gen_all_total(n: usize, g: usize, h: usize, budget: &Budget) -> Result<AllTotal> {
    if n == 0 || !(2..=36).contains(&g) || !(2..=36).contains(&h) {
        return Err(Error::ParameterOutOfRange(format!(
            "need n >= 1, 2 <= g <= 36, 2 <= h <= 36 (got n={n}, g={g}, h={h})"
        )));
    }
    let cube = cube_size(n, g, budget)?;
    let tables = (h as u128).checked_pow(cube as u32).unwrap_or(u128::MAX);
    if cube > u32::MAX as u128 || tables > budget.max_tables {
        return Err(Error::BudgetExceeded {
            size: tables,
            budget: budget.max_tables,
        });
    }
    let words = (0..cube).map(|v| index_word(v, n, g)).collect();
    Ok(AllTotal {
        n,
        g,
        h,
        words,
        next: 0,
        end: tables,
    })
}

/// Iterator returned by [`gen_all_total`].
#[derive(Debug, Clone)]
pub struct AllTotal {
    n: usize,
    g: usize,
    h: usize,
    words: Vec<Word>,
    next: u128,
    end: u128,
}

impl Iterator for AllTotal {
    type Item = PartialFunction;

    fn next(&mut self) -> Option<PartialFunction> {
        while self.next < self.end {
            let outs = index_word(self.next, self.words.len(), self.h);
            self.next += 1;
            let s = outs.symbols();
            if s.iter().all(|&o| o == s[0]) {
                continue;
            }
            let f = PartialFunction::new(
                self.n,
                self.g,
                self.h,
                self.words.iter().cloned().zip(s.iter().copied()),
            )
            .expect("table over the full cube is well formed");
            return Some(f);
        }
        None
    }
}

/// The certificates used in the separation arguments.
pub mod witnesses {
    use ratlp::Rational;

    use super::{gen_projective_plane, osp_word, unit};
    use crate::function::Word;
    use crate::measures::witness::{DistanceScheme, Rank1Witness, RelationalWitness};

    /// `R(x, y) = 1` between every 0-input and every 1-input of `Gth_n`.
    pub fn gth_all_ones(n: usize) -> RelationalWitness {
        let half = n / 2;
        let pairs = (0..half)
            .flat_map(|i| (half..n).map(move |j| (unit(n, i), unit(n, j), Rational::one())));
        RelationalWitness::from_entries(pairs).expect("weights are positive and off-diagonal")
    }

    /// All mass on `0^l` against the uniform distribution over the lines.
    pub fn fpp_uniform_rank1(t: usize) -> Rank1Witness {
        let plane = gen_projective_plane(t).expect("supported prime order");
        let l = plane.num_points();
        Rank1Witness {
            a: vec![0],
            b: vec![1],
            p: vec![(Word::new(vec![0; l]), Rational::one())],
            q: (0..l)
                .map(|k| (plane.line_word(k), Rational::new(1, l as i64)))
                .collect(),
        }
    }

    /// `D(x, y) = Ind(x) - Ind(y)` for `Ind(x) > Ind(y)` of different parity.
    /// Each unordered pair is stored once.
    pub fn osp_ind_distance(n: usize) -> DistanceScheme {
        let mut d = DistanceScheme::default();
        for i in 0..=n {
            for j in (0..i).filter(|j| (i - j) % 2 == 1) {
                d.entries
                    .insert((osp_word(n, i), osp_word(n, j)), (i - j) as u64);
            }
        }
        d
    }
}
