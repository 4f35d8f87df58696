//! Lower-bound certificates and their exact evaluators.
//!
//! Each evaluator validates the witness against the function and returns the
//! exact value of the bound it certifies. None of them optimize; see
//! [`super::ca1`] and [`super::mm`] for the exactly computed counterparts.

use std::collections::BTreeMap;

use ratlp::Rational;

use super::fractional::FbsSolution;
use super::minimax::{cross_pairs, MmSolution};
use crate::error::{Error, Result};
use crate::function::{PartialFunction, Word};

fn ordered(x: &Word, y: &Word) -> (Word, Word) {
    if x <= y {
        (x.clone(), y.clone())
    } else {
        (y.clone(), x.clone())
    }
}

fn require_word(f: &PartialFunction, x: &Word) -> Result<u8> {
    f.eval(x)
}

/// A symmetric non-negative weight on pairs of inputs; zero weights are not stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RelationalWitness {
    entries: BTreeMap<(Word, Word), Rational>,
}

impl RelationalWitness {
    /// Either orientation of a pair may be given, or both if they agree.
    pub fn from_entries(entries: impl IntoIterator<Item = (Word, Word, Rational)>) -> Result<Self> {
        let mut map: BTreeMap<(Word, Word), Rational> = BTreeMap::new();
        for (x, y, r) in entries {
            if r.is_negative() {
                return Err(Error::InvalidWitness(format!(
                    "negative weight R({x},{y}) = {r}"
                )));
            }
            if r.is_zero() {
                continue;
            }
            if x == y {
                return Err(Error::InvalidWitness(format!("R({x},{x}) must be 0")));
            }
            let key = ordered(&x, &y);
            if let Some(prev) = map.get(&key) {
                if *prev != r {
                    return Err(Error::InvalidWitness(format!(
                        "asymmetric weight on ({x},{y}): {prev} vs {r}"
                    )));
                }
            }
            map.insert(key, r);
        }
        Ok(RelationalWitness { entries: map })
    }

    pub fn get(&self, x: &Word, y: &Word) -> Rational {
        self.entries
            .get(&ordered(x, y))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Each stored pair once, smaller word first.
    pub fn pairs(&self) -> impl Iterator<Item = (&Word, &Word, &Rational)> {
        self.entries.iter().map(|((x, y), r)| (x, y, r))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn validate(&self, f: &PartialFunction) -> Result<()> {
        if self.is_empty() {
            return Err(Error::EmptyWitness);
        }
        for (x, y, _) in self.pairs() {
            if require_word(f, x)? == require_word(f, y)? {
                return Err(Error::InvalidWitness(format!(
                    "positive weight on ({x},{y}) with equal outputs"
                )));
            }
        }
        Ok(())
    }

    /// Neighbour lists in both orientations.
    fn adjacency(&self) -> BTreeMap<&Word, Vec<(&Word, &Rational)>> {
        let mut adj: BTreeMap<&Word, Vec<(&Word, &Rational)>> = BTreeMap::new();
        for (x, y, r) in self.pairs() {
            adj.entry(x).or_default().push((y, r));
            adj.entry(y).or_default().push((x, r));
        }
        adj
    }
}

/// The rank-1 relation of an optimal fbs weighting: `R(x, y_B) = w(B)`.
pub fn relational_from_fbs(sol: &FbsSolution) -> RelationalWitness {
    let w = &sol.weighting;
    RelationalWitness::from_entries(
        w.weights
            .iter()
            .map(|b| (w.base.clone(), b.witness.clone(), b.weight.clone())),
    )
    .expect("fbs weights are non-negative and attached to distinct words")
}

/// Max over the defined terms; `None` when every term is undefined.
fn max_defined(a: Option<Rational>, b: Option<Rational>) -> Option<Rational> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.max(b)),
        (a, None) => a,
        (None, b) => b,
    }
}

fn min_into(best: &mut Option<Rational>, candidate: Rational) {
    if best.as_ref().is_none_or(|b| candidate < *b) {
        *best = Some(candidate);
    }
}

pub fn eval_relational(f: &PartialFunction, r: &RelationalWitness) -> Result<Rational> {
    r.validate(f)?;
    let adj = r.adjacency();
    let theta = |x: &Word, i: usize| -> Option<Rational> {
        let nbrs = &adj[x];
        let total: Rational = nbrs.iter().map(|(_, w)| *w).sum();
        let den: Rational = nbrs
            .iter()
            .filter(|(y, _)| y.get(i) != x.get(i))
            .map(|(_, w)| *w)
            .sum();
        den.recip().map(|inv| total * inv)
    };
    let mut best = None;
    for (x, y, _) in r.pairs() {
        for i in x.diff(y) {
            if let Some(v) = max_defined(theta(x, i), theta(y, i)) {
                min_into(&mut best, v);
            }
        }
    }
    best.ok_or(Error::EmptyWitness)
}

/// Pair weights `w` plus triple weights `w'(x, y, i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightScheme {
    pub w: RelationalWitness,
    w_prime: BTreeMap<(Word, Word, usize), Rational>,
}

impl WeightScheme {
    /// `i` is 0-based here.
    pub fn new(
        w: RelationalWitness,
        w_prime: impl IntoIterator<Item = (Word, Word, usize, Rational)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (x, y, i, v) in w_prime {
            if v.is_negative() {
                return Err(Error::InvalidWitness(format!(
                    "negative weight w'({x},{y},{}) = {v}",
                    i + 1
                )));
            }
            if v.is_zero() {
                continue;
            }
            if map.insert((x.clone(), y.clone(), i), v).is_some() {
                return Err(Error::InvalidWitness(format!(
                    "w'({x},{y},{}) given twice",
                    i + 1
                )));
            }
        }
        Ok(WeightScheme { w, w_prime: map })
    }

    /// `w = w' = R`, so the scheme's value equals the relational value.
    pub fn from_relational(r: &RelationalWitness) -> Self {
        let mut w_prime = BTreeMap::new();
        for (x, y, v) in r.pairs() {
            for i in x.diff(y) {
                w_prime.insert((x.clone(), y.clone(), i), v.clone());
                w_prime.insert((y.clone(), x.clone(), i), v.clone());
            }
        }
        WeightScheme {
            w: r.clone(),
            w_prime,
        }
    }

    pub fn w_prime(&self, x: &Word, y: &Word, i: usize) -> Rational {
        self.w_prime
            .get(&(x.clone(), y.clone(), i))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn w_prime_entries(&self) -> impl Iterator<Item = (&Word, &Word, usize, &Rational)> {
        self.w_prime.iter().map(|((x, y, i), v)| (x, y, *i, v))
    }

    /// Multiplies every triple weight by `factor`.
    pub fn scale_w_prime(&mut self, factor: &Rational) {
        for v in self.w_prime.values_mut() {
            *v = &*v * factor;
        }
    }

    fn validate(&self, f: &PartialFunction) -> Result<()> {
        self.w.validate(f)?;
        for (x, y, i) in self.w_prime.keys() {
            let fx = require_word(f, x)?;
            let fy = require_word(f, y)?;
            if *i >= f.n() {
                return Err(Error::InvalidWitness(format!(
                    "position {} out of range",
                    i + 1
                )));
            }
            if x.get(*i) == y.get(*i) || fx == fy {
                return Err(Error::InvalidWitness(format!(
                    "w'({x},{y},{}) must be 0",
                    i + 1
                )));
            }
        }
        for (x, y, w) in self.w.pairs() {
            for i in x.diff(y) {
                if self.w_prime(x, y, i) < *w || self.w_prime(y, x, i) < *w {
                    return Err(Error::InvalidWitness(format!(
                        "w'({x},{y},{}) and w'({y},{x},{}) must be at least w = {w}",
                        i + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(())
    }
}

pub fn eval_weighted(f: &PartialFunction, s: &WeightScheme) -> Result<Rational> {
    s.validate(f)?;
    let adj = s.w.adjacency();
    let wt = |x: &Word| -> Rational { adj[x].iter().map(|(_, w)| *w).sum() };
    let v =
        |x: &Word, i: usize| -> Rational { adj[x].iter().map(|(y, _)| s.w_prime(x, y, i)).sum() };
    let ratio = |x: &Word, i: usize| v(x, i).recip().map(|inv| wt(x) * inv);
    let mut best = None;
    for (x, y, _) in s.w.pairs() {
        for i in x.diff(y) {
            if let Some(val) = max_defined(ratio(x, i), ratio(y, i)) {
                min_into(&mut best, val);
            }
        }
    }
    best.ok_or(Error::EmptyWitness)
}

/// One probability vector over positions per domain word.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DistributionFamily {
    pub distributions: BTreeMap<Word, Vec<Rational>>,
}

impl DistributionFamily {
    /// Normalizes optimal minimax weights `v_x / sum v_x`.
    pub fn from_mm(sol: &MmSolution) -> Self {
        let distributions = sol
            .weights
            .weights
            .iter()
            .map(|(x, v)| {
                let total: Rational = v.iter().sum();
                let inv = total
                    .recip()
                    .expect("every input has a positive weight total");
                (x.clone(), v.iter().map(|e| e * &inv).collect())
            })
            .collect();
        DistributionFamily { distributions }
    }

    pub fn uniform(f: &PartialFunction) -> Self {
        let p = Rational::new(1, f.n() as i64);
        DistributionFamily {
            distributions: f
                .words()
                .map(|x| (x.clone(), vec![p.clone(); f.n()]))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MmBound {
    Finite(Rational),
    /// Some pair of differently-valued inputs has zero overlap.
    Infinite,
}

impl std::fmt::Display for MmBound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MmBound::Finite(v) => write!(f, "{v}"),
            MmBound::Infinite => f.write_str("infinite"),
        }
    }
}

pub fn eval_mm_witness(f: &PartialFunction, family: &DistributionFamily) -> Result<MmBound> {
    for (x, p) in &family.distributions {
        require_word(f, x)?;
        if p.len() != f.n() {
            return Err(Error::NotADistribution(format!(
                "p_{x} has {} entries, expected {}",
                p.len(),
                f.n()
            )));
        }
        if p.iter().any(Rational::is_negative) {
            return Err(Error::NotADistribution(format!(
                "p_{x} has a negative entry"
            )));
        }
        let total: Rational = p.iter().sum();
        if !total.is_one() {
            return Err(Error::NotADistribution(format!("p_{x} sums to {total}")));
        }
    }
    if let Some(x) = f.words().find(|x| !family.distributions.contains_key(*x)) {
        return Err(Error::IncompleteFamily(x.to_string()));
    }
    let mut worst: Option<Rational> = None;
    for (x, y) in cross_pairs(f) {
        let (px, py) = (&family.distributions[x], &family.distributions[y]);
        let overlap: Rational = x
            .diff(y)
            .into_iter()
            .map(|i| px[i].clone().min(py[i].clone()))
            .sum();
        let Some(v) = overlap.recip() else {
            return Ok(MmBound::Infinite);
        };
        if worst.as_ref().is_none_or(|w| v > *w) {
            worst = Some(v);
        }
    }
    worst.map(MmBound::Finite).ok_or(Error::ConstantFunction)
}

/// Output partition plus weights on each side. Weights need not be normalized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rank1Witness {
    pub a: Vec<u8>,
    pub b: Vec<u8>,
    pub p: Vec<(Word, Rational)>,
    pub q: Vec<(Word, Rational)>,
}

impl Rank1Witness {
    /// Uniform weights on `f^-1(A)` and `f^-1(B)`.
    pub fn uniform(f: &PartialFunction, a: &[u8]) -> Self {
        let b: Vec<u8> = (0..f.h() as u8).filter(|o| !a.contains(o)).collect();
        let side = |set: &[u8]| -> Vec<(Word, Rational)> {
            f.entries()
                .iter()
                .filter(|(_, o)| set.contains(o))
                .map(|(w, _)| (w.clone(), Rational::one()))
                .collect()
        };
        Rank1Witness {
            a: a.to_vec(),
            b: b.clone(),
            p: side(a),
            q: side(&b),
        }
    }
}

fn normalized(
    f: &PartialFunction,
    side: &[(Word, Rational)],
    allowed: &[u8],
    name: &str,
) -> Result<Vec<(Word, Rational)>> {
    let mut seen = std::collections::BTreeSet::new();
    for (x, w) in side {
        let fx = require_word(f, x)?;
        if !allowed.contains(&fx) {
            return Err(Error::InvalidWitness(format!(
                "{name} puts weight on {x} whose output is outside its class"
            )));
        }
        if w.is_negative() {
            return Err(Error::NotADistribution(format!("{name}({x}) = {w}")));
        }
        if !seen.insert(x) {
            return Err(Error::InvalidWitness(format!("{name}({x}) given twice")));
        }
    }
    let total: Rational = side.iter().map(|(_, w)| w).sum();
    let inv = total
        .recip()
        .ok_or_else(|| Error::NotADistribution(format!("{name} has zero total weight")))?;
    Ok(side
        .iter()
        .filter(|(_, w)| !w.is_zero())
        .map(|(x, w)| (x.clone(), w * &inv))
        .collect())
}

fn mass_where(dist: &[(Word, Rational)], pred: impl Fn(&Word) -> bool) -> Rational {
    dist.iter().filter(|(w, _)| pred(w)).map(|(_, p)| p).sum()
}

pub fn eval_rank1(f: &PartialFunction, wit: &Rank1Witness) -> Result<Rational> {
    let h = f.h() as u8;
    let in_range = |set: &[u8]| set.iter().all(|&o| o < h);
    let disjoint = wit.a.iter().all(|o| !wit.b.contains(o));
    let covers = (0..h).all(|o| wit.a.contains(&o) || wit.b.contains(&o));
    if wit.a.is_empty()
        || wit.b.is_empty()
        || !disjoint
        || !covers
        || !in_range(&wit.a)
        || !in_range(&wit.b)
    {
        return Err(Error::InvalidPartition(format!(
            "A = {:?}, B = {:?} is not a partition of 0..{h}",
            wit.a, wit.b
        )));
    }
    let p = normalized(f, &wit.p, &wit.a, "p")?;
    let q = normalized(f, &wit.q, &wit.b, "q")?;
    let best = if f.g() == 2 {
        rank1_boolean(f.n(), &p, &q)
    } else {
        rank1_general(f.n(), f.g() as u8, &p, &q)
    };
    best.ok_or_else(|| Error::InvalidWitness("no constraining position".into()))
}

/// `min over (i, b) of 1 / min(Pr_q[y_i != b], Pr_p[x_i = b])`, skipping zero minima.
fn rank1_boolean(n: usize, p: &[(Word, Rational)], q: &[(Word, Rational)]) -> Option<Rational> {
    let mut best = None;
    for i in 0..n {
        for b in 0..2u8 {
            let qy = mass_where(q, |y| y.get(i) != b);
            let px = mass_where(p, |x| x.get(i) == b);
            if let Some(v) = qy.min(px).recip() {
                min_into(&mut best, v);
            }
        }
    }
    best
}

/// Minimum over supported `(i, g1 != g2)` of `1 / min(Pr_q[y_i != g1], Pr_p[x_i != g2])`.
pub(crate) fn rank1_general(
    n: usize,
    g: u8,
    p: &[(Word, Rational)],
    q: &[(Word, Rational)],
) -> Option<Rational> {
    let mut best = None;
    for i in 0..n {
        for g1 in 0..g {
            if !p.iter().any(|(x, _)| x.get(i) == g1) {
                continue;
            }
            for g2 in (0..g).filter(|&s| s != g1) {
                if !q.iter().any(|(y, _)| y.get(i) == g2) {
                    continue;
                }
                let qy = mass_where(q, |y| y.get(i) != g1);
                let px = mass_where(p, |x| x.get(i) != g2);
                if let Some(v) = qy.min(px).recip() {
                    min_into(&mut best, v);
                }
            }
        }
    }
    best
}

/// Positive integer distances on ordered pairs of differently-valued inputs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DistanceScheme {
    pub entries: BTreeMap<(Word, Word), u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceBound {
    /// `sum over D(x,y) != 0 of 1 / D(x,y)`.
    pub w: Rational,
    /// `(W / |S|) * min max(1/RL(x,i), 1/LL(y,i))`, without any asymptotic constant.
    pub bound: Rational,
}

pub fn eval_distance_scheme(f: &PartialFunction, d: &DistanceScheme) -> Result<DistanceBound> {
    if d.entries.is_empty() {
        return Err(Error::EmptyWitness);
    }
    for ((x, y), &dist) in &d.entries {
        if dist == 0 {
            return Err(Error::InvalidWitness(format!(
                "D({x},{y}) = 0 must be omitted"
            )));
        }
        if require_word(f, x)? == require_word(f, y)? {
            return Err(Error::InvalidWitness(format!(
                "D({x},{y}) set on equal outputs"
            )));
        }
    }
    let w: Rational = d
        .entries
        .values()
        .map(|&dist| Rational::new(1, dist as i64))
        .sum();

    // Load: for fixed endpoint and position, the largest number of partners
    // differing at that position that share one distance value.
    let load = |anchor: &Word, i: usize, right: bool| -> usize {
        let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
        for ((x, y), &dist) in &d.entries {
            let (own, other) = if right { (x, y) } else { (y, x) };
            if own == anchor && other.get(i) != anchor.get(i) {
                *counts.entry(dist).or_default() += 1;
            }
        }
        counts.into_values().max().unwrap_or(0)
    };
    let mut best: Option<Rational> = None;
    for (x, y) in d.entries.keys() {
        for i in x.diff(y) {
            let rl = load(x, i, true);
            let ll = load(y, i, false);
            let term = Rational::new(1, rl as i64).max(Rational::new(1, ll as i64));
            min_into(&mut best, term);
        }
    }
    let min_term = best.expect("distinct words differ somewhere");
    let bound = &w / &Rational::from(f.domain_size()) * min_term;
    Ok(DistanceBound { w, bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::witnesses::{fpp_uniform_rank1, gth_all_ones, osp_ind_distance};
    use crate::constructions::{gen_fpp, gen_gth, gen_osp, or_total};
    use crate::measures::{fbs_solution, fc_solution, mm_solution};

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn gth_all_ones_relational() {
        for n in [2, 4, 6, 8] {
            let f = gen_gth(n).unwrap();
            assert_eq!(
                eval_relational(&f, &gth_all_ones(n)).unwrap(),
                Rational::from(n / 2)
            );
        }
    }

    #[test]
    fn single_pair_is_one() {
        let f = gen_gth(4).unwrap();
        let rel = RelationalWitness::from_entries([(w("1000"), w("0010"), r(5, 2))]).unwrap();
        assert_eq!(eval_relational(&f, &rel).unwrap(), r(1, 1));
        let s = WeightScheme::from_relational(&rel);
        assert_eq!(eval_weighted(&f, &s).unwrap(), r(1, 1));
        let wit = Rank1Witness {
            a: vec![0],
            b: vec![1],
            p: vec![(w("1000"), r(1, 1))],
            q: vec![(w("0010"), r(1, 1))],
        };
        assert_eq!(eval_rank1(&f, &wit).unwrap(), r(1, 1));
    }

    #[test]
    fn fbs_derived_relation_on_fano() {
        let f = gen_fpp(2).unwrap();
        let sol = fbs_solution(&f, &w("0000000")).unwrap();
        let rel = relational_from_fbs(&sol);
        assert_eq!(eval_relational(&f, &rel).unwrap(), r(7, 3));
        // The uniform 1/3 weighting from the construction evaluates the same.
        let uniform = RelationalWitness::from_entries(
            f.inputs_with_output(1)
                .unwrap()
                .into_iter()
                .map(|y| (w("0000000"), y.clone(), r(1, 3))),
        )
        .unwrap();
        assert_eq!(eval_relational(&f, &uniform).unwrap(), r(7, 3));
    }

    #[test]
    fn weighted_scheme_matches_relational_and_slack_weakens() {
        let f = gen_gth(4).unwrap();
        let rel = gth_all_ones(4);
        let mut s = WeightScheme::from_relational(&rel);
        assert_eq!(eval_weighted(&f, &s).unwrap(), r(2, 1));
        s.scale_w_prime(&r(2, 1));
        assert_eq!(eval_weighted(&f, &s).unwrap(), r(1, 1));
    }

    #[test]
    fn weighted_scheme_validation() {
        let f = gen_gth(4).unwrap();
        let rel = RelationalWitness::from_entries([(w("1000"), w("0010"), r(1, 1))]).unwrap();
        let short = WeightScheme::new(
            rel.clone(),
            [
                (w("1000"), w("0010"), 0, r(1, 1)),
                (w("0010"), w("1000"), 0, r(1, 2)),
                (w("1000"), w("0010"), 2, r(1, 1)),
                (w("0010"), w("1000"), 2, r(1, 1)),
            ],
        )
        .unwrap();
        assert!(matches!(
            eval_weighted(&f, &short),
            Err(Error::InvalidWitness(_))
        ));
        let on_equal_position =
            WeightScheme::new(rel, [(w("1000"), w("0010"), 1, r(1, 1))]).unwrap();
        assert!(matches!(
            eval_weighted(&f, &on_equal_position),
            Err(Error::InvalidWitness(_))
        ));
    }

    #[test]
    fn relational_validation() {
        let f = gen_gth(4).unwrap();
        assert_eq!(
            eval_relational(&f, &RelationalWitness::default()),
            Err(Error::EmptyWitness)
        );
        let same = RelationalWitness::from_entries([(w("1000"), w("0100"), r(1, 1))]).unwrap();
        assert!(matches!(
            eval_relational(&f, &same),
            Err(Error::InvalidWitness(_))
        ));
        assert!(RelationalWitness::from_entries([
            (w("1000"), w("0010"), r(1, 1)),
            (w("0010"), w("1000"), r(2, 1)),
        ])
        .is_err());
        assert!(RelationalWitness::from_entries([(w("1000"), w("0010"), r(-1, 1))]).is_err());
        let outside = RelationalWitness::from_entries([(w("1100"), w("0010"), r(1, 1))]).unwrap();
        assert!(matches!(
            eval_relational(&f, &outside),
            Err(Error::WordNotInDomain(_))
        ));
    }

    #[test]
    fn mm_witness_examples() {
        let f = gen_gth(4).unwrap();
        assert_eq!(
            eval_mm_witness(&f, &DistributionFamily::uniform(&f)).unwrap(),
            MmBound::Finite(r(2, 1))
        );
        let concentrated = DistributionFamily {
            distributions: f
                .words()
                .map(|x| {
                    let p = (0..4)
                        .map(|i| if x.get(i) == 1 { r(1, 1) } else { r(0, 1) })
                        .collect();
                    (x.clone(), p)
                })
                .collect(),
        };
        assert_eq!(
            eval_mm_witness(&f, &concentrated).unwrap(),
            MmBound::Infinite
        );

        let mut incomplete = DistributionFamily::uniform(&f);
        incomplete.distributions.remove(&w("0001"));
        assert!(matches!(
            eval_mm_witness(&f, &incomplete),
            Err(Error::IncompleteFamily(_))
        ));
        let mut bad = DistributionFamily::uniform(&f);
        bad.distributions.insert(w("0001"), vec![r(1, 2); 4]);
        assert!(matches!(
            eval_mm_witness(&f, &bad),
            Err(Error::NotADistribution(_))
        ));
    }

    #[test]
    fn or2_rescaled_fc_weights_attain_mm() {
        let f = or_total(2).unwrap();
        let distributions = f
            .words()
            .map(|x| {
                let v = fc_solution(&f, x).unwrap().weights;
                let total: Rational = v.iter().sum();
                (x.clone(), v.iter().map(|e| e / &total).collect())
            })
            .collect();
        let fam = DistributionFamily { distributions };
        assert_eq!(eval_mm_witness(&f, &fam).unwrap(), MmBound::Finite(r(2, 1)));
    }

    #[test]
    fn mm_optimum_as_witness_is_tight() {
        for f in [
            gen_gth(4).unwrap(),
            gen_osp(4).unwrap(),
            or_total(2).unwrap(),
        ] {
            let sol = mm_solution(&f).unwrap();
            let fam = DistributionFamily::from_mm(&sol);
            assert_eq!(
                eval_mm_witness(&f, &fam).unwrap(),
                MmBound::Finite(sol.value)
            );
        }
    }

    #[test]
    fn rank1_examples() {
        let gth = gen_gth(4).unwrap();
        assert_eq!(
            eval_rank1(&gth, &Rank1Witness::uniform(&gth, &[0])).unwrap(),
            r(2, 1)
        );
        let fpp = gen_fpp(2).unwrap();
        assert_eq!(eval_rank1(&fpp, &fpp_uniform_rank1(2)).unwrap(), r(7, 3));
    }

    #[test]
    fn rank1_forms_agree_on_boolean_inputs() {
        let f = gen_osp(6).unwrap();
        let wit = Rank1Witness::uniform(&f, &[0]);
        let p = normalized(&f, &wit.p, &wit.a, "p").unwrap();
        let q = normalized(&f, &wit.q, &wit.b, "q").unwrap();
        assert_eq!(rank1_boolean(6, &p, &q), rank1_general(6, 2, &p, &q));
    }

    #[test]
    fn rank1_validation() {
        let f = gen_gth(4).unwrap();
        let mut wit = Rank1Witness::uniform(&f, &[0]);
        wit.b = vec![0, 1];
        assert!(matches!(
            eval_rank1(&f, &wit),
            Err(Error::InvalidPartition(_))
        ));
        let mut wrong_side = Rank1Witness::uniform(&f, &[0]);
        wrong_side.p.push((w("0001"), r(1, 1)));
        assert!(matches!(
            eval_rank1(&f, &wrong_side),
            Err(Error::InvalidWitness(_))
        ));
        let mut negative = Rank1Witness::uniform(&f, &[0]);
        negative.p[0].1 = r(-1, 1);
        assert!(matches!(
            eval_rank1(&f, &negative),
            Err(Error::NotADistribution(_))
        ));
    }

    #[test]
    fn osp4_distance_scheme() {
        let f = gen_osp(4).unwrap();
        let bound = eval_distance_scheme(&f, &osp_ind_distance(4)).unwrap();
        assert_eq!(bound.w, r(14, 3));
        assert_eq!(bound.bound, r(14, 15));
    }

    #[test]
    fn osp_distance_w_formula() {
        // W = (n+1) * sum_{k=1}^{n/2} 1/(2k-1) - n/2
        for n in [2usize, 4, 6, 8, 10] {
            let f = gen_osp(n).unwrap();
            let odd_harmonic: Rational = (1..=n / 2)
                .map(|k| Rational::new(1, 2 * k as i64 - 1))
                .sum();
            let expected = Rational::from(n + 1) * odd_harmonic - Rational::new(n as i64, 2);
            let got = eval_distance_scheme(&f, &osp_ind_distance(n)).unwrap();
            assert_eq!(got.w, expected, "n = {n}");
        }
    }

    #[test]
    fn single_distance_pair() {
        let f = gen_osp(4).unwrap();
        let d = DistanceScheme {
            entries: [((w("0001"), w("0011")), 1)].into_iter().collect(),
        };
        let b = eval_distance_scheme(&f, &d).unwrap();
        assert_eq!(b.w, r(1, 1));
        assert_eq!(b.bound, r(1, 5));
        assert_eq!(
            eval_distance_scheme(&f, &DistanceScheme::default()),
            Err(Error::EmptyWitness)
        );
    }
}
