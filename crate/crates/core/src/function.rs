//! Partial functions given by truth tables, and the `qfn` text format.
//!
//! ```text
//! # comments run to end of line
//! qfn 1 n=4 g=2 h=2
//! 0001 1
//! 0010 1
//! 0100 0
//! 1000 0
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Symbol characters; a symbol's value is its index here.
pub const ALPHABET: &[u8; 36] = b"0123456789abcdefghijklmnopqrstuvwxyz";

pub const MAX_ALPHABET: usize = ALPHABET.len();

fn symbol_value(c: u8) -> Option<u8> {
    ALPHABET.iter().position(|&a| a == c).map(|v| v as u8)
}

fn symbol_char(v: u8) -> char {
    ALPHABET[v as usize] as char
}

/// A fixed-length input word. Ordering is lexicographic on symbols.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(symbols: Vec<u8>) -> Self {
        Word(symbols)
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> u8 {
        self.0[i]
    }

    /// 0-based positions where the two words differ.
    pub fn diff(&self, other: &Word) -> Vec<usize> {
        self.0
            .iter()
            .zip(&other.0)
            .enumerate()
            .filter_map(|(i, (a, b))| (a != b).then_some(i))
            .collect()
    }

    pub fn concat(parts: &[&Word]) -> Word {
        Word(parts.iter().flat_map(|w| w.0.iter().copied()).collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.0 {
            write!(f, "{}", symbol_char(s))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.bytes()
            .map(|c| {
                symbol_value(c).ok_or_else(|| Error::Syntax {
                    line: 0,
                    message: format!("invalid symbol {:?} in word {s:?}", c as char),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A non-empty set of positions, sorted, 0-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Block(Vec<usize>);

impl Block {
    /// `None` if `indices` is empty. Input order and duplicates are irrelevant.
    pub fn new(mut indices: Vec<usize>) -> Option<Self> {
        indices.sort_unstable();
        indices.dedup();
        (!indices.is_empty()).then_some(Block(indices))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn is_subset_of(&self, other: &Block) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }

    pub fn is_disjoint(&self, other: &Block) -> bool {
        !self.0.iter().any(|&i| other.contains(i))
    }
}

/// 1-based, as in reports: `{1,3}`.
impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str("}")
    }
}

/// The distinct sensitive blocks of one input, each with the first domain word (in
/// lexicographic order) that realizes it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SensitiveBlockFamily {
    pub base: Word,
    pub blocks: Vec<(Block, Word)>,
}

impl SensitiveBlockFamily {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn iter_blocks(&self) -> impl Iterator<Item = &Block> {
        self.blocks.iter().map(|(b, _)| b)
    }

    /// Blocks with no proper sensitive sub-block, in family order.
    ///
    /// Packing and hitting problems over the family have the same optima over
    /// this sub-family.
    pub fn minimal_blocks(&self) -> Vec<Block> {
        let all: Vec<&Block> = self.iter_blocks().collect();
        all.iter()
            .filter(|b| !all.iter().any(|c| c.len() < b.len() && c.is_subset_of(b)))
            .map(|b| (*b).clone())
            .collect()
    }
}

/// `f : S -> H` with `S` a subset of `G^n`, stored as a lexicographically sorted table.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartialFunction {
    n: usize,
    g: usize,
    h: usize,
    entries: Vec<(Word, u8)>,
}

impl PartialFunction {
    /// Validates and builds a function. Identical duplicate entries are merged;
    /// conflicting ones are rejected.
    pub fn new(
        n: usize,
        g: usize,
        h: usize,
        entries: impl IntoIterator<Item = (Word, u8)>,
    ) -> Result<Self> {
        check_alphabet("g", g)?;
        check_alphabet("h", h)?;
        let mut table: BTreeMap<Word, u8> = BTreeMap::new();
        for (word, out) in entries {
            if word.len() != n {
                return Err(Error::ArityMismatch {
                    line: 0,
                    expected: n,
                    got: word.len(),
                });
            }
            if let Some(&s) = word.symbols().iter().find(|&&s| s as usize >= g) {
                return Err(Error::SymbolOutOfRange {
                    line: 0,
                    symbol: symbol_char(s),
                    limit: g,
                });
            }
            if out as usize >= h {
                return Err(Error::SymbolOutOfRange {
                    line: 0,
                    symbol: symbol_char(out),
                    limit: h,
                });
            }
            if let Some(&prev) = table.get(&word) {
                if prev != out {
                    return Err(Error::DuplicateKey(word.to_string()));
                }
            }
            table.insert(word, out);
        }
        let mut outs = table.values();
        let Some(first) = outs.next() else {
            return Err(Error::EmptyDomain);
        };
        if outs.all(|o| o == first) {
            return Err(Error::ConstantFunction);
        }
        Ok(PartialFunction {
            n,
            g,
            h,
            entries: table.into_iter().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn domain_size(&self) -> usize {
        self.entries.len()
    }

    /// `|S| = g^n`.
    pub fn is_total(&self) -> bool {
        (self.g as u128)
            .checked_pow(self.n as u32)
            .is_some_and(|total| total == self.entries.len() as u128)
    }

    pub fn entries(&self) -> &[(Word, u8)] {
        &self.entries
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.entries.iter().map(|(w, _)| w)
    }

    pub fn index_of(&self, x: &Word) -> Option<usize> {
        self.entries.binary_search_by(|(w, _)| w.cmp(x)).ok()
    }

    pub fn get(&self, x: &Word) -> Option<u8> {
        self.index_of(x).map(|k| self.entries[k].1)
    }

    /// Output at `x`, or `WordNotInDomain`.
    pub fn eval(&self, x: &Word) -> Result<u8> {
        self.get(x)
            .ok_or_else(|| Error::WordNotInDomain(x.to_string()))
    }

    pub fn contains(&self, x: &Word) -> bool {
        self.index_of(x).is_some()
    }

    /// Output values that actually occur, ascending.
    pub fn achieved_outputs(&self) -> Vec<u8> {
        let mut outs: Vec<u8> = self.entries.iter().map(|&(_, o)| o).collect();
        outs.sort_unstable();
        outs.dedup();
        outs
    }

    /// `{ x in S : f(x) = b }` in lexicographic order.
    pub fn inputs_with_output(&self, b: u8) -> Result<Vec<&Word>> {
        if b as usize >= self.h {
            return Err(Error::SymbolOutOfRange {
                line: 0,
                symbol: symbol_char(b.min(35)),
                limit: self.h,
            });
        }
        Ok(self
            .entries
            .iter()
            .filter(|&&(_, o)| o == b)
            .map(|(w, _)| w)
            .collect())
    }

    /// Every distinct `diff(x, y)` over `y` in `S` with `f(y) != f(x)`.
    pub fn sensitive_blocks(&self, x: &Word) -> Result<SensitiveBlockFamily> {
        let fx = self.eval(x)?;
        let mut seen = std::collections::HashSet::new();
        let mut blocks = Vec::new();
        for (y, fy) in &self.entries {
            if *fy == fx {
                continue;
            }
            let block = Block::new(x.diff(y)).expect("distinct outputs imply distinct words");
            if seen.insert(block.clone()) {
                blocks.push((block, y.clone()));
            }
        }
        Ok(SensitiveBlockFamily {
            base: x.clone(),
            blocks,
        })
    }

    /// The `qfn` text form: header plus one line per domain word in lexicographic order.
    pub fn to_qfn(&self) -> String {
        let mut out = format!("qfn 1 n={} g={} h={}\n", self.n, self.g, self.h);
        for (w, o) in &self.entries {
            out.push_str(&format!("{w} {}\n", symbol_char(*o)));
        }
        out
    }

    pub fn parse_qfn(text: &str) -> Result<Self> {
        parse(text)
    }
}

fn check_alphabet(name: &str, size: usize) -> Result<()> {
    if size == 0 || size > MAX_ALPHABET {
        Err(Error::Syntax {
            line: 0,
            message: format!("{name}={size} outside 1..={MAX_ALPHABET}"),
        })
    } else {
        Ok(())
    }
}

fn content(line: &str) -> &str {
    let line = line.strip_suffix('\r').unwrap_or(line);
    let line = match line.find('#') {
        Some(k) => &line[..k],
        None => line,
    };
    line.trim_end()
}

fn parse_header(line: &str, lineno: usize) -> Result<(usize, usize, usize)> {
    let syntax = |message: String| Error::Syntax {
        line: lineno,
        message,
    };
    let parts: Vec<&str> = line.split(' ').collect();
    if parts.len() != 5 || parts[0] != "qfn" || parts[1] != "1" {
        return Err(syntax(format!(
            "expected header `qfn 1 n=<N> g=<G> h=<H>`, found {line:?}"
        )));
    }
    let field = |part: &str, key: &str| -> Result<usize> {
        part.strip_prefix(key)
            .and_then(|v| v.strip_prefix('='))
            .filter(|v| !v.is_empty() && v.bytes().all(|b| b.is_ascii_digit()))
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| syntax(format!("bad header field {part:?}, expected {key}=<int>")))
    };
    let n = field(parts[2], "n")?;
    let g = field(parts[3], "g")?;
    let h = field(parts[4], "h")?;
    for (name, v) in [("g", g), ("h", h)] {
        if v == 0 || v > MAX_ALPHABET {
            return Err(syntax(format!("{name}={v} outside 1..={MAX_ALPHABET}")));
        }
    }
    Ok((n, g, h))
}

fn parse(text: &str) -> Result<PartialFunction> {
    let mut header = None;
    let mut table: BTreeMap<Word, u8> = BTreeMap::new();
    for (k, raw) in text.split('\n').enumerate() {
        let lineno = k + 1;
        let line = content(raw);
        if line.is_empty() {
            continue;
        }
        let Some((n, g, h)) = header else {
            header = Some(parse_header(line, lineno)?);
            continue;
        };
        let (word_text, out_text) = line.split_once(' ').ok_or_else(|| Error::Syntax {
            line: lineno,
            message: format!("expected `<word> <out>`, found {line:?}"),
        })?;
        if out_text.len() != 1 {
            return Err(Error::Syntax {
                line: lineno,
                message: format!("output must be a single symbol, found {out_text:?}"),
            });
        }
        let decode = |c: u8, limit: usize| -> Result<u8> {
            let v = symbol_value(c).ok_or_else(|| Error::Syntax {
                line: lineno,
                message: format!("invalid symbol {:?}", c as char),
            })?;
            if v as usize >= limit {
                return Err(Error::SymbolOutOfRange {
                    line: lineno,
                    symbol: c as char,
                    limit,
                });
            }
            Ok(v)
        };
        if word_text.len() != n {
            return Err(Error::ArityMismatch {
                line: lineno,
                expected: n,
                got: word_text.chars().count(),
            });
        }
        let word = Word(
            word_text
                .bytes()
                .map(|c| decode(c, g))
                .collect::<Result<Vec<_>>>()?,
        );
        let out = decode(out_text.as_bytes()[0], h)?;
        if let Some(&prev) = table.get(&word) {
            if prev != out {
                return Err(Error::DuplicateKey(word.to_string()));
            }
        }
        table.insert(word, out);
    }
    let Some((n, g, h)) = header else {
        return Err(Error::Syntax {
            line: 0,
            message: "missing `qfn 1` header".into(),
        });
    };
    PartialFunction::new(n, g, h, table)
}

/// Splits a multi-function archive on `---` separator lines.
pub fn parse_archive(text: &str) -> Result<Vec<PartialFunction>> {
    let mut chunks = vec![String::new()];
    for line in text.split('\n') {
        if content(line) == "---" {
            chunks.push(String::new());
        } else {
            let last = chunks.last_mut().expect("non-empty");
            last.push_str(line);
            last.push('\n');
        }
    }
    chunks
        .iter()
        .filter(|c| c.lines().any(|l| !content(l).is_empty()))
        .map(|c| parse(c))
        .collect()
}

pub fn write_archive<'a>(functions: impl IntoIterator<Item = &'a PartialFunction>) -> String {
    let mut out = String::new();
    for (k, f) in functions.into_iter().enumerate() {
        if k > 0 {
            out.push_str("---\n");
        }
        out.push_str(&f.to_qfn());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn or2() -> PartialFunction {
        PartialFunction::new(
            2,
            2,
            2,
            [(w("00"), 0), (w("01"), 1), (w("10"), 1), (w("11"), 1)],
        )
        .unwrap()
    }

    #[test]
    fn parses_two_point_function() {
        let f = PartialFunction::parse_qfn("qfn 1 n=2 g=2 h=2\n00 0\n11 1\n").unwrap();
        assert_eq!(f.domain_size(), 2);
        assert_eq!(f.get(&w("00")), Some(0));
        assert_eq!(f.get(&w("11")), Some(1));
        assert!(!f.is_total());
    }

    #[test]
    fn comments_crlf_and_blank_lines() {
        let text =
            "# leading comment\r\nqfn 1 n=2 g=2 h=2 # trailing\r\n\r\n00 0\r\n  \n11 1 # note\r\n";
        let f = PartialFunction::parse_qfn(text).unwrap();
        assert_eq!(f.domain_size(), 2);
    }

    #[test]
    fn parse_errors_are_distinct() {
        let dup = PartialFunction::parse_qfn("qfn 1 n=1 g=2 h=2\n0 0\n0 1\n");
        assert!(matches!(dup, Err(Error::DuplicateKey(_))));
        let same = PartialFunction::parse_qfn("qfn 1 n=1 g=2 h=2\n0 0\n0 0\n1 1\n");
        assert!(same.is_ok());
        let constant = PartialFunction::parse_qfn("qfn 1 n=1 g=2 h=2\n0 1\n1 1\n");
        assert!(matches!(constant, Err(Error::ConstantFunction)));
        let empty = PartialFunction::parse_qfn("qfn 1 n=1 g=2 h=2\n");
        assert!(matches!(empty, Err(Error::EmptyDomain)));
        let arity = PartialFunction::parse_qfn("qfn 1 n=2 g=2 h=2\n0 1\n");
        assert!(matches!(arity, Err(Error::ArityMismatch { line: 2, .. })));
        let range = PartialFunction::parse_qfn("qfn 1 n=1 g=2 h=2\n2 1\n");
        assert!(matches!(
            range,
            Err(Error::SymbolOutOfRange { line: 2, .. })
        ));
        let out_range = PartialFunction::parse_qfn("qfn 1 n=1 g=2 h=2\n0 2\n");
        assert!(matches!(out_range, Err(Error::SymbolOutOfRange { .. })));
        for bad in [
            "qfn 1 n=1  g=2 h=2\n0 0\n1 1\n",
            "qfn 2 n=1 g=2 h=2\n0 0\n1 1\n",
            "qfn 1 n=1 g=2\n",
            "qfn 1 n=1 g=37 h=2\n",
            "qfn 1 n=1 g=2 h=2\n0  1\n",
            "qfn 1 n=1 g=2 h=2\n0\n",
            "qfn 1 n=1 g=2 h=2\n0 ?\n",
            "0 0\n",
        ] {
            assert!(
                matches!(PartialFunction::parse_qfn(bad), Err(Error::Syntax { .. })),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn serializer_is_lexicographic() {
        let f = or2();
        assert_eq!(f.to_qfn(), "qfn 1 n=2 g=2 h=2\n00 0\n01 1\n10 1\n11 1\n");
        assert!(f.is_total());
    }

    #[test]
    fn or_sensitive_blocks() {
        let fam = or2().sensitive_blocks(&w("00")).unwrap();
        let blocks: Vec<String> = fam.iter_blocks().map(|b| b.to_string()).collect();
        assert_eq!(blocks, ["{2}", "{1}", "{1,2}"]);
        assert_eq!(fam.minimal_blocks().len(), 2);
        assert!(matches!(
            or2().sensitive_blocks(&w("02")),
            Err(Error::WordNotInDomain(_))
        ));
    }

    #[test]
    fn inputs_with_output_partitions_domain() {
        let f = or2();
        assert_eq!(f.inputs_with_output(0).unwrap(), vec![&w("00")]);
        assert_eq!(f.inputs_with_output(1).unwrap().len(), 3);
        assert!(f.inputs_with_output(2).is_err());
    }

    #[test]
    fn archive_round_trip() {
        let a = or2();
        let b = PartialFunction::parse_qfn("qfn 1 n=2 g=2 h=2\n00 0\n11 1\n").unwrap();
        let text = write_archive([&a, &b]);
        assert_eq!(parse_archive(&text).unwrap(), vec![a, b]);
    }

    #[test]
    fn word_symbols_beyond_nine() {
        let x: Word = "az9".parse().unwrap();
        assert_eq!(x.symbols(), &[10, 35, 9]);
        assert_eq!(x.to_string(), "az9");
        assert!("A".parse::<Word>().is_err());
    }
}
