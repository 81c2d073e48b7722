//! Text and JSON encodings of [`PairSet`].
//!
//! Text form, one record:
//!
//! ```text
//! n=11
//! 1 6
//! 2 4
//! 3 7
//! 5 8
//! 9 10
//! ```
//!
//! Pairs are written canonically. The parser accepts pairs in any order and
//! orientation, blank lines, and `#` comments. Several records may follow one
//! another; each starts with its own `n=` header.
//!
//! JSON form: `{"modulus": 11, "pairs": [[1, 6], [2, 4], ...]}`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::starter::{PairSet, StarterError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("line {line}: expected header `n=<modulus>`, found {found:?}")]
    BadHeader { line: usize, found: String },
    #[error("line {line}: expected a pair `x y`, found {found:?}")]
    BadPair { line: usize, found: String },
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("expected exactly one pair set, found {0}")]
    RecordCount(usize),
    #[error(transparent)]
    Invalid(#[from] StarterError),
}

impl fmt::Display for PairSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.modulus().get())?;
        for p in self.pairs() {
            writeln!(f, "{} {}", p.low, p.high)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct RawPairSet {
    modulus: u64,
    pairs: Vec<(u64, u64)>,
}

impl Serialize for PairSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RawPairSet {
            modulus: self.modulus().get(),
            pairs: self.pairs().iter().map(|p| (p.low, p.high)).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PairSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawPairSet::deserialize(deserializer)?;
        PairSet::from_pairs(raw.modulus, raw.pairs).map_err(serde::de::Error::custom)
    }
}

impl PairSet {
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("pair set serializes")
    }

    /// Parses exactly one record in either format; JSON is recognized by a
    /// leading `{`.
    pub fn parse(input: &str) -> Result<PairSet, ParseError> {
        if input.trim_start().starts_with('{') {
            return PairSet::parse_json(input);
        }
        let mut records = parse_text_records(input)?;
        match records.len() {
            1 => Ok(records.pop().unwrap()),
            0 => Err(ParseError::Empty),
            k => Err(ParseError::RecordCount(k)),
        }
    }

    pub fn parse_json(input: &str) -> Result<PairSet, ParseError> {
        let raw: RawPairSet =
            serde_json::from_str(input).map_err(|e| ParseError::Json(e.to_string()))?;
        Ok(PairSet::from_pairs(raw.modulus, raw.pairs)?)
    }
}

fn content(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

/// Parses a stream of text records.
pub fn parse_text_records(input: &str) -> Result<Vec<PairSet>, ParseError> {
    let mut out = Vec::new();
    let mut current: Option<(u64, Vec<(u64, u64)>)> = None;
    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = content(raw);
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("n=") {
            let n = rest.trim().parse::<u64>().map_err(|_| ParseError::BadHeader {
                line: line_no,
                found: raw.to_string(),
            })?;
            if let Some((m, pairs)) = current.replace((n, Vec::new())) {
                out.push(PairSet::from_pairs(m, pairs)?);
            }
            continue;
        }
        let Some((_, pairs)) = current.as_mut() else {
            return Err(ParseError::BadHeader {
                line: line_no,
                found: raw.to_string(),
            });
        };
        let bad = || ParseError::BadPair {
            line: line_no,
            found: raw.to_string(),
        };
        let mut fields = line.split_whitespace().map(str::parse::<u64>);
        let pair = match (fields.next(), fields.next(), fields.next()) {
            (Some(Ok(a)), Some(Ok(b)), None) => (a, b),
            _ => return Err(bad()),
        };
        pairs.push(pair);
    }
    if let Some((m, pairs)) = current {
        out.push(PairSet::from_pairs(m, pairs)?);
    }
    Ok(out)
}
