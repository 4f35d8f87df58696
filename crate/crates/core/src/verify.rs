//! Verification suites: exact invariant checks over exhaustive or seeded corpora.

use std::fmt;
use std::str::FromStr;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use ratlp::Rational;

use crate::constructions::witnesses::osp_ind_distance;
use crate::constructions::{
    compose_or, gen_all_total, gen_fpp, gen_gth, gen_osp, gen_random_partial, Budget,
};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::function::{PartialFunction, Word};
use crate::measures::witness::eval_distance_scheme;
use crate::measures::witness::eval_rank1;
use crate::measures::{
    bs, bs_at, ca1, ca1_solution, cert, cert_at, fbs, fbs_at, fbs_parametrized, fc_at, fc_solution,
    mm_solution, IndexWeighting,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Duality,
    TotalEquivalence,
    ChainPartial,
    SqrtBarrier,
    PaperExamples,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Duality,
        Suite::TotalEquivalence,
        Suite::ChainPartial,
        Suite::SqrtBarrier,
        Suite::PaperExamples,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Duality => "duality",
            Suite::TotalEquivalence => "total-equivalence",
            Suite::ChainPartial => "chain-partial",
            Suite::SqrtBarrier => "sqrt-barrier",
            Suite::PaperExamples => "paper-examples",
        }
    }

    /// Corpus parameters used when none are given.
    pub fn default_params(self) -> SuiteParams {
        let base = SuiteParams {
            n: 4,
            g: 2,
            h: 2,
            samples: 500,
            seed: 1,
            fraction: Rational::new(1, 2),
            budget: Budget::default(),
        };
        match self {
            Suite::Duality => SuiteParams {
                n: 5,
                g: 3,
                h: 3,
                samples: 1000,
                ..base
            },
            Suite::TotalEquivalence => SuiteParams { n: 3, ..base },
            Suite::ChainPartial => SuiteParams {
                samples: 300,
                ..base
            },
            Suite::SqrtBarrier | Suite::PaperExamples => base,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::ParameterOutOfRange(format!("unknown suite {s:?}")))
    }
}

/// Corpus parameters. For sampled suites `n`, `g` and `h` are upper limits;
/// for `total-equivalence` they are exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteParams {
    pub n: usize,
    pub g: usize,
    pub h: usize,
    pub samples: usize,
    pub seed: u64,
    /// Domain fraction of each sampled function.
    pub fraction: Rational,
    pub budget: Budget,
}

/// One violated property with the exact values on both sides.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Failure {
    pub function: String,
    pub property: String,
    pub left: String,
    pub right: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} violated (left = {}, right = {})",
            self.function, self.property, self.left, self.right
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub suite: String,
    pub cases: usize,
    /// Sorted by function identifier, then property.
    pub failures: Vec<Failure>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<20} {:>8} {:>9}", "suite", "cases", "failures")?;
        writeln!(
            f,
            "{:<20} {:>8} {:>9}",
            self.suite,
            self.cases,
            self.failures.len()
        )?;
        for fail in &self.failures {
            writeln!(f, "  {fail}")?;
        }
        Ok(())
    }
}

/// A labelled function of a corpus.
pub type Case = (String, PartialFunction);

/// The seeded corpus of a sampled suite.
///
/// A SplitMix64 stream seeded with `seed` yields, per sample, four draws:
/// `n' = 1 + r % n`, `g' = 2 + r % (g - 1)`, `h' = 2 + r % (h - 1)` and the
/// seed passed to `gen_random_partial` together with `fraction`.
pub fn random_corpus(p: &SuiteParams) -> Result<Vec<Case>> {
    if p.n == 0 || p.g < 2 || p.h < 2 {
        return Err(Error::ParameterOutOfRange(
            "sampled corpora need n >= 1, g >= 2, h >= 2".into(),
        ));
    }
    let mut rng = SplitMix64::seed_from_u64(p.seed);
    let mut out = Vec::with_capacity(p.samples);
    for k in 0..p.samples {
        let n = 1 + (rng.next_u64() % p.n as u64) as usize;
        let g = 2 + (rng.next_u64() % (p.g as u64 - 1)) as usize;
        let h = 2 + (rng.next_u64() % (p.h as u64 - 1)) as usize;
        let seed = rng.next_u64();
        let f = gen_random_partial(n, g, h, &p.fraction, seed, &p.budget)?;
        out.push((format!("random#{k:05}(n={n},g={g},h={h},seed={seed})"), f));
    }
    Ok(out)
}

pub fn total_corpus(p: &SuiteParams) -> Result<Vec<Case>> {
    Ok(gen_all_total(p.n, p.g, p.h, &p.budget)?
        .enumerate()
        .map(|(k, f)| {
            let table: String = f
                .entries()
                .iter()
                .map(|(_, o)| Word::new(vec![*o]).to_string())
                .collect();
            (
                format!("total#{k:05}(n={},g={},h={},table={table})", p.n, p.g, p.h),
                f,
            )
        })
        .collect())
}

struct Checker<'a> {
    function: &'a str,
    failures: Vec<Failure>,
}

impl<'a> Checker<'a> {
    fn new(function: &'a str) -> Self {
        Checker {
            function,
            failures: Vec::new(),
        }
    }

    fn check(
        &mut self,
        ok: bool,
        property: impl Into<String>,
        left: impl ToString,
        right: impl ToString,
    ) {
        if !ok {
            self.failures.push(Failure {
                function: self.function.to_string(),
                property: property.into(),
                left: left.to_string(),
                right: right.to_string(),
            });
        }
    }

    fn eq<T: PartialEq + ToString>(&mut self, property: &str, left: T, right: T) {
        let ok = left == right;
        self.check(ok, property, left, right);
    }

    fn le<T: PartialOrd + ToString>(&mut self, property: &str, left: T, right: T) {
        let ok = left <= right;
        self.check(ok, property, left, right);
    }

    fn run(mut self, body: impl FnOnce(&mut Self) -> Result<()>) -> Vec<Failure> {
        if let Err(e) = body(&mut self) {
            self.check(false, "evaluation error", e, "-");
        }
        self.failures
    }
}

/// `fbs_at = fc_at` exactly and `bs_at <= fbs_at <= cert_at` at every input.
pub fn check_duality(id: &str, f: &PartialFunction) -> Vec<Failure> {
    Checker::new(id).run(|c| {
        for x in f.words() {
            let fb = fbs_at(f, x)?;
            let fcv = fc_at(f, x)?;
            c.eq(&format!("fbs_at = fc_at at {x}"), &fb, &fcv);
            c.le(
                &format!("bs_at <= fbs_at at {x}"),
                Rational::from(bs_at(f, x)?),
                fb.clone(),
            );
            c.le(
                &format!("fbs_at <= cert_at at {x}"),
                fb,
                Rational::from(cert_at(f, x)?),
            );
        }
        Ok(())
    })
}

/// `mm = FC = fbs` exactly; optimal FC weights meet the min-sum constraints.
pub fn check_total_equivalence(id: &str, f: &PartialFunction) -> Vec<Failure> {
    Checker::new(id).run(|c| {
        let mm_sol = mm_solution(f)?;
        let mut fc_max = Rational::zero();
        let mut weights = Vec::with_capacity(f.domain_size());
        for x in f.words() {
            let sol = fc_solution(f, x)?;
            fc_max = fc_max.max(sol.value.clone());
            weights.push((x.clone(), sol.weights));
        }
        let fbs_max = fbs(f)?.value;
        c.eq("mm = FC", &mm_sol.value, &fc_max);
        c.eq("FC = fbs", &fc_max, &fbs_max);
        c.check(
            IndexWeighting { weights }.satisfies_min_sum(f),
            "optimal FC weights satisfy the min-sum constraints",
            "false",
            "true",
        );
        c.check(
            mm_sol.weights.satisfies_min_sum(f),
            "mm assignment satisfies the raw min-sum constraints",
            "false",
            "true",
        );
        Ok(())
    })
}

/// `fbs <= ca1`, and the optimal rank-1 weights evaluate back to `ca1`.
pub fn check_chain(id: &str, f: &PartialFunction) -> Vec<Failure> {
    Checker::new(id).run(|c| {
        let sol = ca1_solution(f)?;
        c.le("fbs <= ca1", fbs(f)?.value, sol.value.clone());
        c.eq(
            "eval_rank1(ca1 optimum) = ca1",
            eval_rank1(f, &sol.to_witness())?,
            sol.value,
        );
        Ok(())
    })
}

/// `fbs^2 <= n bs`, and `fbs_N(x)^2 <= N bs_at(x)` at the fbs maximizer for `N` in `{1, n/2, n}`.
pub fn check_barrier(id: &str, f: &PartialFunction) -> Vec<Failure> {
    Checker::new(id).run(|c| {
        let n = Rational::from(f.n());
        let top = fbs(f)?;
        c.le(
            "fbs^2 <= n bs",
            top.value.square(),
            &n * &Rational::from(bs(f)?.value),
        );
        let x = &top.argmax;
        let local_bs = Rational::from(bs_at(f, x)?);
        for budget in [Rational::one(), &n / &Rational::from_integer(2), n.clone()] {
            c.le(
                &format!("fbs_N(x)^2 <= N bs_at(x) at {x}, N = {budget}"),
                fbs_parametrized(f, x, &budget)?.square(),
                &budget * &local_bs,
            );
        }
        Ok(())
    })
}

fn paper_examples(exec: Exec) -> Vec<(String, Vec<Failure>)> {
    type Example = (&'static str, fn(&mut Checker) -> Result<()>);
    let examples: Vec<Example> = vec![
        ("gth8", |c| {
            let f = gen_gth(8)?;
            c.eq("fbs(Gth_8) = 1", fbs(&f)?.value, Rational::one());
            c.eq("cert(Gth_8) = 1", cert(&f)?.value, 1);
            c.le("4 <= ca1(Gth_8)", Rational::from_integer(4), ca1(&f)?);
            Ok(())
        }),
        ("osp8", |c| {
            let f = gen_osp(8)?;
            c.le("ca1(Osp_8) <= 2", ca1(&f)?, Rational::from_integer(2));
            Ok(())
        }),
        ("osp4", |c| {
            let f = gen_osp(4)?;
            let b = eval_distance_scheme(&f, &osp_ind_distance(4))?;
            c.eq("W(Osp_4) = 14/3", b.w, Rational::new(14, 3));
            Ok(())
        }),
        ("fpp2", |c| {
            let f = gen_fpp(2)?;
            let zero = Word::new(vec![0; 7]);
            c.eq(
                "fbs(Fpp_2, 0^7) = 7/3",
                fbs_at(&f, &zero)?,
                Rational::new(7, 3),
            );
            c.eq("bs(Fpp_2, 0^7) = 1", bs_at(&f, &zero)?, 1);
            Ok(())
        }),
        ("fpp2-or2", |c| {
            let f = compose_or(&gen_fpp(2)?, 2, &Budget::default())?;
            let b = bs(&f)?.value;
            let v = fbs(&f)?.value;
            c.eq("bs(Fpp_2 o OR_2) = 2", b, 2);
            c.le("14/3 <= fbs(Fpp_2 o OR_2)", Rational::new(14, 3), v.clone());
            c.le("fbs^2 <= 14 bs", v.square(), Rational::from(14 * b));
            Ok(())
        }),
    ];
    exec.map(&examples, |(id, body)| {
        (id.to_string(), Checker::new(id).run(|c| body(c)))
    })
}

type CaseCheck = fn(&str, &PartialFunction) -> Vec<Failure>;

/// Runs a suite. Results do not depend on `exec`.
pub fn run_suite(suite: Suite, params: &SuiteParams, exec: Exec) -> Result<SuiteResult> {
    let per_case: Vec<(String, Vec<Failure>)> = match suite {
        Suite::PaperExamples => paper_examples(exec),
        _ => {
            let (corpus, check): (Vec<Case>, CaseCheck) = match suite {
                Suite::Duality => (random_corpus(params)?, check_duality),
                Suite::TotalEquivalence => (total_corpus(params)?, check_total_equivalence),
                Suite::ChainPartial => {
                    if params.g != 2 {
                        return Err(Error::NonBooleanAlphabet(params.g));
                    }
                    (random_corpus(params)?, check_chain)
                }
                Suite::SqrtBarrier => (random_corpus(params)?, check_barrier),
                Suite::PaperExamples => unreachable!(),
            };
            exec.map(&corpus, |(id, f)| (id.clone(), check(id, f)))
        }
    };
    let cases = per_case.len();
    let mut failures: Vec<Failure> = per_case.into_iter().flat_map(|(_, f)| f).collect();
    failures.sort();
    Ok(SuiteResult {
        suite: suite.name().to_string(),
        cases,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(suite: Suite) -> SuiteParams {
        SuiteParams {
            samples: 20,
            ..suite.default_params()
        }
    }

    #[test]
    fn suites_pass_on_small_corpora() {
        for suite in Suite::ALL {
            let mut p = small(suite);
            if suite == Suite::TotalEquivalence {
                p.n = 2;
            }
            let r = run_suite(suite, &p, Exec::default()).unwrap();
            assert!(r.passed(), "{r}");
            assert!(r.cases > 0);
        }
    }

    #[test]
    fn total_equivalence_counts() {
        let p = SuiteParams {
            n: 2,
            ..Suite::TotalEquivalence.default_params()
        };
        assert_eq!(
            run_suite(Suite::TotalEquivalence, &p, Exec::Sequential)
                .unwrap()
                .cases,
            14
        );
    }

    #[test]
    fn corpus_is_seed_stable() {
        let p = small(Suite::Duality);
        let a = random_corpus(&p).unwrap();
        let b = random_corpus(&p).unwrap();
        assert_eq!(a, b);
        let other = random_corpus(&SuiteParams { seed: 2, ..p }).unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn failures_carry_exact_values() {
        let f = gen_gth(4).unwrap();
        let fails = Checker::new("gth4").run(|c| {
            c.le("ca1 <= 1", ca1(&f)?, Rational::one());
            Ok(())
        });
        assert_eq!(
            fails,
            vec![Failure {
                function: "gth4".into(),
                property: "ca1 <= 1".into(),
                left: "2".into(),
                right: "1".into(),
            }]
        );
    }

    #[test]
    fn chain_needs_boolean_inputs() {
        let p = SuiteParams {
            g: 3,
            ..small(Suite::ChainPartial)
        };
        assert_eq!(
            run_suite(Suite::ChainPartial, &p, Exec::Sequential),
            Err(Error::NonBooleanAlphabet(3))
        );
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let p = small(Suite::SqrtBarrier);
        assert_eq!(
            run_suite(Suite::SqrtBarrier, &p, Exec::Sequential).unwrap(),
            run_suite(Suite::SqrtBarrier, &p, Exec::Parallel).unwrap()
        );
    }
}
