//! Candidate starters for `Z_n` and the starter / strong / Skolem predicates.
//!
//! A [`PairSet`] is only checked for shape (`(n - 1) / 2` pairs of distinct
//! nonzero residues). Whether it is actually a starter is a question for the
//! verifiers, which report every violation they find as a [`Witness`].

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::number_theory::{Modulus, NumberTheoryError};

/// An unordered pair, stored with `low < high`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair {
    pub low: u64,
    pub high: u64,
}

impl Pair {
    pub fn new(a: u64, b: u64) -> Pair {
        Pair {
            low: a.min(b),
            high: a.max(b),
        }
    }

    /// Plain integer difference `high - low`.
    #[inline]
    pub fn span(self) -> u64 {
        self.high - self.low
    }

    /// The difference `±(high - low)` folded into `1..=(n-1)/2`.
    #[inline]
    pub fn folded_difference(self, n: u64) -> u64 {
        let d = self.span();
        d.min(n - d)
    }

    #[inline]
    pub fn sum_mod(self, n: u64) -> u64 {
        (self.low + self.high) % n
    }
}

impl Serialize for Pair {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        [self.low, self.high].serialize(serializer)
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.low, self.high)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StarterError {
    #[error(transparent)]
    Modulus(#[from] NumberTheoryError),
    #[error("expected {expected} pairs for n = {modulus}, found {found}")]
    WrongPairCount {
        modulus: u64,
        expected: usize,
        found: usize,
    },
    #[error("element {element} is not in 1..={max}")]
    ElementOutOfRange { element: u64, max: u64 },
    #[error("pair {{{0},{0}}} repeats an element")]
    DegeneratePair(u64),
}

/// A candidate starter: `(n - 1) / 2` unordered pairs over `Z_n^*`, kept in
/// canonical order (pairs sorted, smaller element first).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PairSet {
    modulus: Modulus,
    pairs: Vec<Pair>,
}

impl PairSet {
    pub fn new<I>(modulus: Modulus, pairs: I) -> Result<PairSet, StarterError>
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        let n = modulus.get();
        let mut out = Vec::with_capacity(modulus.half() as usize);
        for (a, b) in pairs {
            for e in [a, b] {
                if e == 0 || e >= n {
                    return Err(StarterError::ElementOutOfRange {
                        element: e,
                        max: n - 1,
                    });
                }
            }
            if a == b {
                return Err(StarterError::DegeneratePair(a));
            }
            out.push(Pair::new(a, b));
        }
        if out.len() as u64 != modulus.half() {
            return Err(StarterError::WrongPairCount {
                modulus: n,
                expected: modulus.half() as usize,
                found: out.len(),
            });
        }
        out.sort_unstable();
        Ok(PairSet {
            modulus,
            pairs: out,
        })
    }

    /// Convenience constructor taking the raw modulus.
    pub fn from_pairs<I>(n: u64, pairs: I) -> Result<PairSet, StarterError>
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        PairSet::new(Modulus::new(n)?, pairs)
    }

    /// Caller guarantees shape; only sorting is done.
    pub(crate) fn from_pairs_unchecked(modulus: Modulus, mut pairs: Vec<Pair>) -> PairSet {
        debug_assert_eq!(pairs.len() as u64, modulus.half());
        pairs.sort_unstable();
        PairSet { modulus, pairs }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, pair: Pair) -> bool {
        self.pairs.binary_search(&pair).is_ok()
    }
}

/// One concrete reason a property fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A nonzero residue covered by no pair.
    MissingElement { element: u64 },
    /// A residue covered by more than one pair.
    RepeatedElement { element: u64, pairs: Vec<Pair> },
    /// Several pairs share the difference `±difference`.
    RepeatedDifference { difference: u64, pairs: Vec<Pair> },
    /// No pair has difference `±difference`.
    MissingDifference { difference: u64 },
    /// Several pairs share the sum `sum` mod n.
    RepeatedSum { sum: u64, pairs: Vec<Pair> },
    /// No pair has integer difference `difference` in `1..=(n-1)/2`.
    MissingSkolemDifference { difference: u64 },
    /// Integer difference larger than `(n-1)/2`.
    SkolemDifferenceOutOfRange { pair: Pair, difference: u64 },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |pairs: &[Pair]| {
            pairs
                .iter()
                .map(Pair::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        };
        match self {
            Witness::MissingElement { element } => write!(f, "element {element} not covered"),
            Witness::RepeatedElement { element, pairs } => {
                write!(f, "element {element} repeated in {}", list(pairs))
            }
            Witness::RepeatedDifference { difference, pairs } => {
                write!(f, "difference ±{difference} repeated in {}", list(pairs))
            }
            Witness::MissingDifference { difference } => {
                write!(f, "difference ±{difference} not realized")
            }
            Witness::RepeatedSum { sum, pairs } => {
                write!(f, "sum {sum} repeated in {}", list(pairs))
            }
            Witness::MissingSkolemDifference { difference } => {
                write!(f, "no pair with integer difference {difference}")
            }
            Witness::SkolemDifferenceOutOfRange { pair, difference } => {
                write!(f, "pair {pair} has integer difference {difference}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("not a starter ({} violation(s))", witnesses.len())]
pub struct NotAStarter {
    pub witnesses: Vec<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub witnesses: Vec<Witness>,
}

impl Verdict {
    fn from_witnesses(witnesses: Vec<Witness>) -> Verdict {
        Verdict {
            holds: witnesses.is_empty(),
            witnesses,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkolemVerdict {
    /// `ordering[i - 1]` is the pair with integer difference `i`.
    pub ordering: Option<Vec<Pair>>,
    pub witnesses: Vec<Witness>,
}

impl SkolemVerdict {
    pub fn holds(&self) -> bool {
        self.ordering.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub is_starter: bool,
    pub is_strong: bool,
    pub is_skolem: bool,
    /// Informational: some pair sums to 0 mod n. Not part of `is_strong`.
    pub has_zero_sum: bool,
    pub skolem_ordering: Option<Vec<Pair>>,
    pub witnesses: Vec<Witness>,
}

impl VerificationReport {
    pub fn is_strong_skolem(&self) -> bool {
        self.is_starter && self.is_strong && self.is_skolem
    }
}

/// `n` is an admissible order for Skolem starters: `n ≡ 1, 3 (mod 8)`.
pub fn skolem_admissible(n: u64) -> Result<bool, NumberTheoryError> {
    let m = Modulus::new(n)?;
    Ok(matches!(m.get() % 8, 1 | 3))
}

/// Groups pairs by `key`, returning `(key, pairs)` for keys hit more than once
/// and the list of keys in `1..=range` never hit.
fn bucket(
    pairs: &[Pair],
    range: usize,
    keys: impl Fn(Pair) -> Vec<u64>,
) -> (Vec<(u64, Vec<Pair>)>, Vec<u64>) {
    let mut buckets: Vec<Vec<Pair>> = vec![Vec::new(); range + 1];
    for &p in pairs {
        for k in keys(p) {
            buckets[k as usize].push(p);
        }
    }
    let mut repeated = Vec::new();
    let mut missing = Vec::new();
    for (k, b) in buckets.into_iter().enumerate().skip(1) {
        match b.len() {
            0 => missing.push(k as u64),
            1 => {}
            _ => repeated.push((k as u64, b)),
        }
    }
    (repeated, missing)
}

fn starter_witnesses(s: &PairSet) -> Vec<Witness> {
    let n = s.modulus.get();
    let mut out = Vec::new();
    let (repeated, missing) = bucket(&s.pairs, n as usize - 1, |p| vec![p.low, p.high]);
    out.extend(
        missing
            .into_iter()
            .map(|element| Witness::MissingElement { element }),
    );
    out.extend(
        repeated
            .into_iter()
            .map(|(element, pairs)| Witness::RepeatedElement { element, pairs }),
    );
    let (repeated, missing) = bucket(&s.pairs, s.modulus.half() as usize, |p| {
        vec![p.folded_difference(n)]
    });
    out.extend(
        repeated
            .into_iter()
            .map(|(difference, pairs)| Witness::RepeatedDifference { difference, pairs }),
    );
    out.extend(
        missing
            .into_iter()
            .map(|difference| Witness::MissingDifference { difference }),
    );
    out
}

fn sum_witnesses(s: &PairSet) -> Vec<Witness> {
    let n = s.modulus.get();
    let mut buckets: Vec<Vec<Pair>> = vec![Vec::new(); n as usize];
    for &p in &s.pairs {
        buckets[p.sum_mod(n) as usize].push(p);
    }
    buckets
        .into_iter()
        .enumerate()
        .filter(|(_, b)| b.len() > 1)
        .map(|(sum, pairs)| Witness::RepeatedSum {
            sum: sum as u64,
            pairs,
        })
        .collect()
}

fn skolem_check(s: &PairSet) -> SkolemVerdict {
    let t = s.modulus.half() as usize;
    let mut slots: Vec<Option<Pair>> = vec![None; t];
    let mut witnesses = Vec::new();
    for &p in &s.pairs {
        let d = p.span();
        if d as usize > t {
            witnesses.push(Witness::SkolemDifferenceOutOfRange {
                pair: p,
                difference: d,
            });
        } else {
            slots[d as usize - 1] = Some(p);
        }
    }
    witnesses.extend(
        slots
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_none())
            .map(|(i, _)| Witness::MissingSkolemDifference {
                difference: i as u64 + 1,
            }),
    );
    let ordering = if witnesses.is_empty() {
        Some(slots.into_iter().map(Option::unwrap).collect())
    } else {
        None
    };
    SkolemVerdict {
        ordering,
        witnesses,
    }
}

/// Elements cover `Z_n^*` exactly and the differences `±(x - y)` do too.
pub fn verify_starter(s: &PairSet) -> Verdict {
    Verdict::from_witnesses(starter_witnesses(s))
}

/// A starter whose pair sums are pairwise distinct mod n.
pub fn verify_strong(s: &PairSet) -> Result<Verdict, NotAStarter> {
    require_starter(s)?;
    Ok(Verdict::from_witnesses(sum_witnesses(s)))
}

/// A starter whose integer differences `high - low` are exactly `1..=(n-1)/2`.
pub fn verify_skolem(s: &PairSet) -> Result<SkolemVerdict, NotAStarter> {
    require_starter(s)?;
    Ok(skolem_check(s))
}

fn require_starter(s: &PairSet) -> Result<(), NotAStarter> {
    let witnesses = starter_witnesses(s);
    if witnesses.is_empty() {
        Ok(())
    } else {
        Err(NotAStarter { witnesses })
    }
}

/// Runs all three predicates. Strong and Skolem are only claimed for
/// starters, but their witnesses are reported regardless.
pub fn full_report(s: &PairSet) -> VerificationReport {
    let mut witnesses = starter_witnesses(s);
    let is_starter = witnesses.is_empty();
    let sums = sum_witnesses(s);
    let is_strong = is_starter && sums.is_empty();
    let skolem = skolem_check(s);
    let is_skolem = is_starter && skolem.holds();
    witnesses.extend(sums);
    witnesses.extend(skolem.witnesses);
    let n = s.modulus.get();
    VerificationReport {
        is_starter,
        is_strong,
        is_skolem,
        has_zero_sum: s.pairs.iter().any(|p| p.sum_mod(n) == 0),
        skolem_ordering: if is_skolem { skolem.ordering } else { None },
        witnesses,
    }
}
