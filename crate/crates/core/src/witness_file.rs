//! JSON witness documents and their evaluation against exact references.
//!
//! A document is one JSON object whose `type` field selects the layout.
//! Rationals are strings (`"2"`, `"7/3"`), words use the function-file
//! alphabet and positions are 1-based.
//!
//! ```text
//! {"type": "relational", "entries":  [{"x": "1000", "y": "0010", "weight": "1"}, ...]}
//! {"type": "weighted",   "w":        [{"x", "y", "weight"}, ...],
//!                        "w_prime":  [{"x", "y", "i": 1, "weight"}, ...]}
//! {"type": "mm",         "distributions": [{"x": "1000", "p": ["1/4", ...]}, ...]}
//! {"type": "rank1",      "a": [0], "b": [1],
//!                        "p": [{"x", "weight"}, ...], "q": [{"x", "weight"}, ...]}
//! {"type": "distance",   "entries":  [{"x", "y", "d": 3}, ...]}
//! ```
//!
//! Relational entries may list a pair in either or both orientations. Rank-1
//! weights need not be normalized. Distance entries are stored as given.

use std::fmt;

use ratlp::Rational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::{PartialFunction, Word};
use crate::measures::witness::{
    eval_distance_scheme, eval_mm_witness, eval_rank1, eval_relational, eval_weighted,
    DistanceBound, DistanceScheme, DistributionFamily, MmBound, Rank1Witness, RelationalWitness,
    WeightScheme,
};
use crate::measures::{ca1, mm};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairWeight {
    pub x: Word,
    pub y: Word,
    pub weight: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleWeight {
    pub x: Word,
    pub y: Word,
    /// 1-based position.
    pub i: usize,
    pub weight: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistributionEntry {
    pub x: Word,
    pub p: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WordWeight {
    pub x: Word,
    pub weight: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistanceEntry {
    pub x: Word,
    pub y: Word,
    pub d: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum WitnessDocument {
    Relational {
        entries: Vec<PairWeight>,
    },
    Weighted {
        w: Vec<PairWeight>,
        w_prime: Vec<TripleWeight>,
    },
    Mm {
        distributions: Vec<DistributionEntry>,
    },
    Rank1 {
        a: Vec<u8>,
        b: Vec<u8>,
        p: Vec<WordWeight>,
        q: Vec<WordWeight>,
    },
    Distance {
        entries: Vec<DistanceEntry>,
    },
}

/// A validated-in-shape witness of any of the five kinds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Relational(RelationalWitness),
    Weighted(WeightScheme),
    Mm(DistributionFamily),
    Rank1(Rank1Witness),
    Distance(DistanceScheme),
}

fn pairs(entries: Vec<PairWeight>) -> Result<RelationalWitness> {
    RelationalWitness::from_entries(entries.into_iter().map(|e| (e.x, e.y, e.weight)))
}

fn pair_docs(r: &RelationalWitness) -> Vec<PairWeight> {
    r.pairs()
        .map(|(x, y, w)| PairWeight {
            x: x.clone(),
            y: y.clone(),
            weight: w.clone(),
        })
        .collect()
}

impl WitnessDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Syntax {
            line: e.line(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("witness documents always serialize")
    }

    pub fn into_witness(self) -> Result<Witness> {
        Ok(match self {
            WitnessDocument::Relational { entries } => Witness::Relational(pairs(entries)?),
            WitnessDocument::Weighted { w, w_prime } => {
                let mut triples = Vec::with_capacity(w_prime.len());
                for t in w_prime {
                    let i =
                        t.i.checked_sub(1)
                            .ok_or_else(|| Error::InvalidWitness("positions are 1-based".into()))?;
                    triples.push((t.x, t.y, i, t.weight));
                }
                Witness::Weighted(WeightScheme::new(pairs(w)?, triples)?)
            }
            WitnessDocument::Mm { distributions } => {
                let mut family = DistributionFamily::default();
                for d in distributions {
                    let x = d.x.to_string();
                    if family.distributions.insert(d.x, d.p).is_some() {
                        return Err(Error::InvalidWitness(format!("p_{x} given twice")));
                    }
                }
                Witness::Mm(family)
            }
            WitnessDocument::Rank1 { a, b, p, q } => {
                let side = |v: Vec<WordWeight>| v.into_iter().map(|e| (e.x, e.weight)).collect();
                Witness::Rank1(Rank1Witness {
                    a,
                    b,
                    p: side(p),
                    q: side(q),
                })
            }
            WitnessDocument::Distance { entries } => {
                let mut scheme = DistanceScheme::default();
                for e in entries {
                    let key = (e.x, e.y);
                    if scheme.entries.contains_key(&key)
                        || scheme.entries.contains_key(&(key.1.clone(), key.0.clone()))
                    {
                        return Err(Error::InvalidWitness(format!(
                            "D({},{}) given twice",
                            key.0, key.1
                        )));
                    }
                    scheme.entries.insert(key, e.d);
                }
                Witness::Distance(scheme)
            }
        })
    }
}

impl From<&Witness> for WitnessDocument {
    fn from(w: &Witness) -> Self {
        match w {
            Witness::Relational(r) => WitnessDocument::Relational {
                entries: pair_docs(r),
            },
            Witness::Weighted(s) => WitnessDocument::Weighted {
                w: pair_docs(&s.w),
                w_prime: s
                    .w_prime_entries()
                    .map(|(x, y, i, v)| TripleWeight {
                        x: x.clone(),
                        y: y.clone(),
                        i: i + 1,
                        weight: v.clone(),
                    })
                    .collect(),
            },
            Witness::Mm(fam) => WitnessDocument::Mm {
                distributions: fam
                    .distributions
                    .iter()
                    .map(|(x, p)| DistributionEntry {
                        x: x.clone(),
                        p: p.clone(),
                    })
                    .collect(),
            },
            Witness::Rank1(r) => {
                let side = |v: &[(Word, Rational)]| {
                    v.iter()
                        .map(|(x, w)| WordWeight {
                            x: x.clone(),
                            weight: w.clone(),
                        })
                        .collect()
                };
                WitnessDocument::Rank1 {
                    a: r.a.clone(),
                    b: r.b.clone(),
                    p: side(&r.p),
                    q: side(&r.q),
                }
            }
            Witness::Distance(d) => WitnessDocument::Distance {
                entries: d
                    .entries
                    .iter()
                    .map(|((x, y), &d)| DistanceEntry {
                        x: x.clone(),
                        y: y.clone(),
                        d,
                    })
                    .collect(),
            },
        }
    }
}

impl Witness {
    pub fn kind(&self) -> &'static str {
        match self {
            Witness::Relational(_) => "relational",
            Witness::Weighted(_) => "weighted",
            Witness::Mm(_) => "mm",
            Witness::Rank1(_) => "rank1",
            Witness::Distance(_) => "distance",
        }
    }

    pub fn to_json(&self) -> String {
        WitnessDocument::from(self).to_json()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        WitnessDocument::from_json(text)?.into_witness()
    }
}

/// The value an evaluator certifies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evaluation {
    Value(Rational),
    Mm(MmBound),
    Distance(DistanceBound),
}

impl fmt::Display for Evaluation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evaluation::Value(v) => write!(f, "{v}"),
            Evaluation::Mm(b) => write!(f, "{b}"),
            Evaluation::Distance(d) => write!(f, "W = {}, bound = {}", d.w, d.bound),
        }
    }
}

pub fn evaluate(f: &PartialFunction, w: &Witness) -> Result<Evaluation> {
    Ok(match w {
        Witness::Relational(r) => Evaluation::Value(eval_relational(f, r)?),
        Witness::Weighted(s) => Evaluation::Value(eval_weighted(f, s)?),
        Witness::Mm(p) => Evaluation::Mm(eval_mm_witness(f, p)?),
        Witness::Rank1(r) => Evaluation::Value(eval_rank1(f, r)?),
        Witness::Distance(d) => Evaluation::Distance(eval_distance_scheme(f, d)?),
    })
}

/// Comparison of an evaluated witness with an exactly computed measure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Soundness {
    /// `value <= reference` (lower bound) or `value >= reference` (upper bound) was checked.
    Checked {
        reference: &'static str,
        reference_value: Rational,
        lower_bound: bool,
        holds: bool,
    },
    /// No exactly computable counterpart; the text says what the value bounds.
    Unchecked(&'static str),
}

impl Soundness {
    pub fn holds(&self) -> bool {
        match self {
            Soundness::Checked { holds, .. } => *holds,
            Soundness::Unchecked(_) => true,
        }
    }
}

impl fmt::Display for Soundness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Soundness::Checked {
                reference,
                reference_value,
                lower_bound,
                holds,
            } => {
                let rel = if *lower_bound { "<=" } else { ">=" };
                let verdict = if *holds { "ok" } else { "VIOLATED" };
                write!(f, "{rel} {reference} = {reference_value} ({verdict})")
            }
            Soundness::Unchecked(note) => f.write_str(note),
        }
    }
}

fn lower_against_ca1(f: &PartialFunction, value: &Rational) -> Result<Soundness> {
    let reference = ca1(f)?;
    Ok(Soundness::Checked {
        holds: *value <= reference,
        reference: "ca1",
        reference_value: reference,
        lower_bound: true,
    })
}

/// Checks the evaluated value against the exact measure it is contracted to bound.
///
/// Rank-1 witnesses and product-form relational witnesses lower-bound `ca1`
/// (checked for Boolean inputs); minimax witnesses upper-bound `mm`.
pub fn soundness(f: &PartialFunction, w: &Witness, eval: &Evaluation) -> Result<Soundness> {
    match (w, eval) {
        (Witness::Rank1(_), Evaluation::Value(v)) if f.g() == 2 => lower_against_ca1(f, v),
        (Witness::Relational(r), Evaluation::Value(v)) if f.g() == 2 && is_rank1(f, r) => {
            lower_against_ca1(f, v)
        }
        (Witness::Mm(_), Evaluation::Mm(b)) => {
            let reference = mm(f)?;
            let holds = match b {
                MmBound::Finite(v) => *v >= reference,
                MmBound::Infinite => true,
            };
            Ok(Soundness::Checked {
                reference: "mm",
                reference_value: reference,
                lower_bound: false,
                holds,
            })
        }
        (Witness::Rank1(_), _) => Ok(Soundness::Unchecked(
            "<= CA1 (exact CA1 needs Boolean inputs; not computed)",
        )),
        (Witness::Relational(_) | Witness::Weighted(_), _) => {
            Ok(Soundness::Unchecked("<= CA (not directly computed)"))
        }
        (Witness::Distance(_), _) => Ok(Soundness::Unchecked(
            "lower-bounds KA up to a constant (not directly computed)",
        )),
        _ => unreachable!("evaluation kind follows witness kind"),
    }
}

/// Whether `r` is `p(x) q(y)` on `U x V` for word sets whose output sets are disjoint.
pub fn is_rank1(f: &PartialFunction, r: &RelationalWitness) -> bool {
    let Some((x0, y0, _)) = r.pairs().next() else {
        return false;
    };
    let partners = |z: &Word| -> Vec<Word> {
        r.pairs()
            .filter_map(|(a, b, _)| {
                if a == z {
                    Some(b.clone())
                } else if b == z {
                    Some(a.clone())
                } else {
                    None
                }
            })
            .collect()
    };
    let u = partners(y0);
    let v = partners(x0);
    let out = |ws: &[Word]| -> Vec<u8> { ws.iter().filter_map(|w| f.get(w)).collect() };
    let (fu, fv) = (out(&u), out(&v));
    if fu.len() != u.len() || fv.len() != v.len() || fu.iter().any(|o| fv.contains(o)) {
        return false;
    }
    if r.pairs().count() != u.len() * v.len() {
        return false;
    }
    // Product form: every 2x2 minor vanishes against the (x0, y0)-anchored row and column.
    let base = r.get(x0, y0);
    u.iter().all(|x| {
        v.iter()
            .all(|y| r.get(x, y) * &base == r.get(x, y0) * r.get(x0, y))
    })
}
