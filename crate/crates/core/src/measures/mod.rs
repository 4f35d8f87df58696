//! Exact sensitivity measures, adversary programs and witness evaluators.

mod combinatorial;
mod fractional;
mod minimax;
mod rank1;
pub mod witness;

use ratlp::Rational;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::function::{PartialFunction, Word};

pub use combinatorial::{bs, bs_at, cert, cert_at, certificate_at};
pub use fractional::{
    fbs, fbs_at, fbs_parametrized, fbs_solution, fc, fc_at, fc_solution, BlockWeighting,
    FbsSolution, FcSolution, WeightedBlock,
};
pub use minimax::{mm, mm_solution, IndexWeighting, MmSolution};
pub use rank1::{ca1, ca1_program, ca1_solution, solve_partition, Ca1Program, Ca1Solution};

/// A maximum over the domain together with the first word attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Maximum<V> {
    pub value: V,
    pub argmax: Word,
}

/// Evaluates `per_input` on every domain word and keeps the lexicographically
/// first maximizer. Work is fanned out with [`Exec::default`].
pub fn max_over_domain<V, F>(f: &PartialFunction, per_input: F) -> Result<Maximum<V>>
where
    V: Ord + Send,
    F: Fn(&Word) -> Result<V> + Sync + Send,
{
    max_over(f.words().collect::<Vec<_>>(), per_input)
}

fn max_over<V, F>(words: Vec<&Word>, per_input: F) -> Result<Maximum<V>>
where
    V: Ord + Send,
    F: Fn(&Word) -> Result<V> + Sync + Send,
{
    let values = Exec::default().try_map(&words, |x| per_input(x))?;
    let mut best: Option<Maximum<V>> = None;
    for (x, value) in words.into_iter().zip(values) {
        if best.as_ref().is_none_or(|b| value > b.value) {
            best = Some(Maximum {
                value,
                argmax: x.clone(),
            });
        }
    }
    best.ok_or(Error::EmptyDomain)
}

/// Per-input measures that have a one-sided variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OneSidedMeasure {
    Bs,
    Fbs,
    Fc,
    Cert,
}

impl OneSidedMeasure {
    pub fn name(self) -> &'static str {
        match self {
            OneSidedMeasure::Bs => "bs",
            OneSidedMeasure::Fbs => "fbs",
            OneSidedMeasure::Fc => "fc",
            OneSidedMeasure::Cert => "cert",
        }
    }

    fn at(self, f: &PartialFunction, x: &Word) -> Result<Rational> {
        match self {
            OneSidedMeasure::Bs => bs_at(f, x).map(Rational::from),
            OneSidedMeasure::Fbs => fbs_at(f, x),
            OneSidedMeasure::Fc => fc_at(f, x),
            OneSidedMeasure::Cert => cert_at(f, x).map(Rational::from),
        }
    }
}

/// The measure maximized over `f^-1(b)` only. Requires Boolean output.
pub fn one_sided(
    f: &PartialFunction,
    measure: OneSidedMeasure,
    b: u8,
) -> Result<Maximum<Rational>> {
    if f.h() != 2 {
        return Err(Error::NonBooleanOutput(f.h()));
    }
    if b > 1 {
        return Err(Error::ParameterOutOfRange(format!(
            "side {b} is not 0 or 1"
        )));
    }
    max_over(f.inputs_with_output(b)?, |x| measure.at(f, x))
}
