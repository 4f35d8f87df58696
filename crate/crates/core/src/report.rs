//! Named exact measure values for one function, in JSON or CSV.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use ratlp::Rational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::{PartialFunction, Word};
use crate::measures::witness::{relational_from_fbs, DistributionFamily};
use crate::measures::{
    bs, ca1_solution, cert, fbs, fbs_solution, fc, mm_solution, one_sided, Maximum, OneSidedMeasure,
};
use crate::witness_file::{Witness, WitnessDocument};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MeasureKind {
    Bs,
    Cert,
    Fbs,
    Fc,
    Mm,
    Ca1,
}

impl MeasureKind {
    pub const ALL: [MeasureKind; 6] = [
        MeasureKind::Bs,
        MeasureKind::Cert,
        MeasureKind::Fbs,
        MeasureKind::Fc,
        MeasureKind::Mm,
        MeasureKind::Ca1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MeasureKind::Bs => "bs",
            MeasureKind::Cert => "cert",
            MeasureKind::Fbs => "fbs",
            MeasureKind::Fc => "fc",
            MeasureKind::Mm => "mm",
            MeasureKind::Ca1 => "ca1",
        }
    }

    fn one_sided(self) -> Option<OneSidedMeasure> {
        match self {
            MeasureKind::Bs => Some(OneSidedMeasure::Bs),
            MeasureKind::Cert => Some(OneSidedMeasure::Cert),
            MeasureKind::Fbs => Some(OneSidedMeasure::Fbs),
            MeasureKind::Fc => Some(OneSidedMeasure::Fc),
            MeasureKind::Mm | MeasureKind::Ca1 => None,
        }
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MeasureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MeasureKind::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                Error::ParameterOutOfRange(format!(
                    "unknown measure {s:?} (expected bs, cert, fbs, fc, mm or ca1)"
                ))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasureReport {
    pub function: String,
    pub n: usize,
    /// Keyed by measure name; one-sided values use `name^b`.
    pub measures: BTreeMap<String, Rational>,
    pub argmax: BTreeMap<String, Word>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<BTreeMap<String, WitnessDocument>>,
}

fn label(kind: MeasureKind, side: Option<u8>) -> String {
    match side {
        Some(b) => format!("{}^{b}", kind.name()),
        None => kind.name().to_string(),
    }
}

impl MeasureReport {
    /// Computes `kinds` in the given order. With `side`, only per-input measures are allowed.
    pub fn compute(
        f: &PartialFunction,
        function: &str,
        kinds: &[MeasureKind],
        side: Option<u8>,
        with_witnesses: bool,
    ) -> Result<Self> {
        let mut report = MeasureReport {
            function: function.to_string(),
            n: f.n(),
            measures: BTreeMap::new(),
            argmax: BTreeMap::new(),
            witnesses: with_witnesses.then(BTreeMap::new),
        };
        for &kind in kinds {
            let name = label(kind, side);
            let (value, argmax) = match (side, kind.one_sided()) {
                (Some(b), Some(m)) => {
                    let r = one_sided(f, m, b)?;
                    (r.value, Some(r.argmax))
                }
                (Some(_), None) => {
                    return Err(Error::ParameterOutOfRange(format!(
                        "{kind} has no one-sided variant"
                    )))
                }
                (None, _) => two_sided(f, kind)?,
            };
            if let Some(ws) = report.witnesses.as_mut() {
                if let Some(doc) = witness_for(f, kind, argmax.as_ref())? {
                    ws.insert(name.clone(), doc);
                }
            }
            report.measures.insert(name.clone(), value);
            if let Some(x) = argmax {
                report.argmax.insert(name, x);
            }
        }
        Ok(report)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Syntax {
            line: e.line(),
            message: e.to_string(),
        })
    }

    /// `function,n,measure,value,argmax`, one row per measure.
    pub fn to_csv(&self, header: bool) -> String {
        self.write_csv(header)
            .expect("writing CSV to memory cannot fail")
    }

    fn write_csv(&self, header: bool) -> csv::Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        if header {
            w.write_record(["function", "n", "measure", "value", "argmax"])?;
        }
        let n = self.n.to_string();
        for (name, value) in &self.measures {
            let argmax = self
                .argmax
                .get(name)
                .map(Word::to_string)
                .unwrap_or_default();
            w.write_record([&self.function, &n, name, &value.to_string(), &argmax])?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("every field is UTF-8"))
    }
}

fn with_argmax<V: Into<Rational>>(m: Maximum<V>) -> (Rational, Option<Word>) {
    (m.value.into(), Some(m.argmax))
}

fn two_sided(f: &PartialFunction, kind: MeasureKind) -> Result<(Rational, Option<Word>)> {
    Ok(match kind {
        MeasureKind::Bs => with_argmax(bs(f)?),
        MeasureKind::Cert => with_argmax(cert(f)?),
        MeasureKind::Fbs => with_argmax(fbs(f)?),
        MeasureKind::Fc => with_argmax(fc(f)?),
        MeasureKind::Mm => (mm_solution(f)?.value, None),
        MeasureKind::Ca1 => (ca1_solution(f)?.value, None),
    })
}

/// Optimal solutions re-expressed as witness documents, where a witness form exists.
fn witness_for(
    f: &PartialFunction,
    kind: MeasureKind,
    argmax: Option<&Word>,
) -> Result<Option<WitnessDocument>> {
    let w = match (kind, argmax) {
        (MeasureKind::Fbs, Some(x)) => {
            Witness::Relational(relational_from_fbs(&fbs_solution(f, x)?))
        }
        (MeasureKind::Mm, _) => Witness::Mm(DistributionFamily::from_mm(&mm_solution(f)?)),
        (MeasureKind::Ca1, _) => Witness::Rank1(ca1_solution(f)?.to_witness()),
        _ => return Ok(None),
    };
    Ok(Some(WitnessDocument::from(&w)))
}
