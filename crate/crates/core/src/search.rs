//! Exhaustive backtracking search for (strong) Skolem starters.
//!
//! A Skolem starter for `Z_n`, `n = 2t + 1`, is a partition of `{1, ..., 2t}`
//! into pairs `(x, x + i)`, one for each `i = 1..=t`. The search assigns one
//! difference per level, largest first by default, and prunes on element
//! reuse and, for strong starters, on repeated sums mod n.
//!
//! Counts are raw labeled counts: no two starters are identified under any
//! symmetry.
//!
//! Witnesses come out in depth-first order, which is a function of the
//! configuration only. The parallel search splits on the pair chosen at the
//! first level and concatenates per-branch results in branch order, so it
//! reproduces the sequential counts and witness list exactly.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::construction::{
    build_s_beta, build_strong_skolem, BetaChoice, ConstructionError, ConstructionParams,
};
use crate::number_theory::{build_qr_table, is_prime, Modulus, NumberTheoryError};
use crate::starter::{full_report, Pair, PairSet};

/// Default largest `n` for exhaustive modes without an explicit override.
pub const DEFAULT_CEILING: u64 = 27;

/// Hard limit from the 128-bit occupancy masks.
pub const MAX_SEARCH_ORDER: u64 = 127;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error(transparent)]
    NumberTheory(#[from] NumberTheoryError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("n = {n} ≡ {residue} (mod 8) admits no Skolem starter (need n ≡ 1 or 3 mod 8)")]
    Inadmissible { n: u64, residue: u64 },
    #[error("limit must be at least 1")]
    ZeroLimit,
    #[error("n = {n} exceeds the tractability ceiling {ceiling}; override to run anyway")]
    CeilingExceeded { n: u64, ceiling: u64 },
    #[error("n = {n} exceeds the largest searchable order {MAX_SEARCH_ORDER}")]
    TooLarge { n: u64 },
    #[error("search produced a pair set that fails verification:\n{starter}")]
    InvalidWitness { starter: PairSet },
    #[error("construction S_{beta} for q = {q} missing from the exhaustive enumeration:\n{starter}")]
    ConstructionMissing {
        q: u64,
        beta: BetaChoice,
        starter: PairSet,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    /// Exact count, no witnesses kept.
    CountAll,
    /// Stop after `limit` (default 1) witnesses.
    FirstWitness,
    /// Exact count; witnesses kept up to `limit`.
    EnumerateAll,
}

impl SearchMode {
    pub fn is_exhaustive(self) -> bool {
        !matches!(self, SearchMode::FirstWitness)
    }
}

/// Static order in which differences are assigned.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DifferenceOrder {
    /// `t, t-1, ..., 1`: fail-first, since large differences have the
    /// fewest placements.
    #[default]
    LargestFirst,
    SmallestFirst,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    #[serde(serialize_with = "serialize_modulus")]
    pub n: Modulus,
    pub mode: SearchMode,
    pub limit: Option<usize>,
    pub require_strong: bool,
    pub order: DifferenceOrder,
    pub ceiling: u64,
    pub override_ceiling: bool,
    pub parallel: bool,
}

fn serialize_modulus<S: serde::Serializer>(m: &Modulus, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u64(m.get())
}

impl SearchConfig {
    /// Rejects `n` that is not an admissible Skolem order.
    pub fn new(n: u64, mode: SearchMode) -> Result<SearchConfig, SearchError> {
        let m = Modulus::new(n)?;
        if !matches!(n % 8, 1 | 3) {
            return Err(SearchError::Inadmissible { n, residue: n % 8 });
        }
        Ok(SearchConfig {
            n: m,
            mode,
            limit: None,
            require_strong: true,
            order: DifferenceOrder::LargestFirst,
            ceiling: DEFAULT_CEILING,
            override_ceiling: false,
            parallel: false,
        })
    }

    pub fn strong(mut self, require_strong: bool) -> Self {
        self.require_strong = require_strong;
        self
    }

    pub fn limit(mut self, limit: Option<usize>) -> Self {
        self.limit = limit;
        self
    }

    pub fn order(mut self, order: DifferenceOrder) -> Self {
        self.order = order;
        self
    }

    pub fn ceiling(mut self, ceiling: u64) -> Self {
        self.ceiling = ceiling;
        self
    }

    pub fn override_ceiling(mut self, yes: bool) -> Self {
        self.override_ceiling = yes;
        self
    }

    pub fn parallel(mut self, yes: bool) -> Self {
        self.parallel = yes;
        self
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        let n = self.n.get();
        if self.limit == Some(0) {
            return Err(SearchError::ZeroLimit);
        }
        if n > MAX_SEARCH_ORDER {
            return Err(SearchError::TooLarge { n });
        }
        if self.mode.is_exhaustive() && n > self.ceiling && !self.override_ceiling {
            return Err(SearchError::CeilingExceeded {
                n,
                ceiling: self.ceiling,
            });
        }
        Ok(())
    }

    /// Number of witnesses to keep.
    fn keep(&self) -> usize {
        match self.mode {
            SearchMode::CountAll => 0,
            SearchMode::FirstWitness => self.limit.unwrap_or(1),
            SearchMode::EnumerateAll => self.limit.unwrap_or(usize::MAX),
        }
    }

    fn differences(&self) -> Vec<u64> {
        let t = self.n.half();
        match self.order {
            DifferenceOrder::LargestFirst => (1..=t).rev().collect(),
            DifferenceOrder::SmallestFirst => (1..=t).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub n: u64,
    pub require_strong: bool,
    /// Exact for exhaustive modes; for `FirstWitness`, the number of
    /// witnesses found before stopping.
    pub count: u64,
    pub witnesses: Vec<PairSet>,
    pub nodes_explored: u64,
    pub wall_time: Duration,
}

struct Walker<'a, F> {
    cfg: &'a SearchConfig,
    n: u64,
    differences: Vec<u64>,
    used: u128,
    sums: u128,
    stack: Vec<Pair>,
    count: u64,
    emitted: usize,
    keep: usize,
    nodes: u64,
    on_witness: F,
}

impl<'a, F: FnMut(PairSet)> Walker<'a, F> {
    fn new(cfg: &'a SearchConfig, on_witness: F) -> Self {
        Walker {
            cfg,
            n: cfg.n.get(),
            differences: cfg.differences(),
            used: 0,
            sums: 0,
            stack: Vec::with_capacity(cfg.n.half() as usize),
            count: 0,
            emitted: 0,
            keep: cfg.keep(),
            nodes: 0,
            on_witness,
        }
    }

    /// Candidate `(x, sum)` placements for the difference at `depth`.
    #[inline]
    fn placements(&self, depth: usize) -> impl Iterator<Item = (u64, u64)> + '_ {
        let d = self.differences[depth];
        let n = self.n;
        (1..n - d).filter_map(move |x| {
            let bits = (1u128 << x) | (1u128 << (x + d));
            if self.used & bits != 0 {
                return None;
            }
            let s = (2 * x + d) % n;
            if self.cfg.require_strong && self.sums & (1u128 << s) != 0 {
                return None;
            }
            Some((x, s))
        })
    }

    fn place(&mut self, depth: usize, x: u64, s: u64) {
        let d = self.differences[depth];
        self.used |= (1u128 << x) | (1u128 << (x + d));
        self.sums |= 1u128 << s;
        self.stack.push(Pair::new(x, x + d));
    }

    fn unplace(&mut self, depth: usize, x: u64, s: u64) {
        let d = self.differences[depth];
        self.used &= !((1u128 << x) | (1u128 << (x + d)));
        self.sums &= !(1u128 << s);
        self.stack.pop();
    }

    /// Returns `Ok(true)` when the search should stop.
    fn visit(&mut self, depth: usize) -> Result<bool, SearchError> {
        self.nodes += 1;
        if depth == self.differences.len() {
            return self.leaf();
        }
        let candidates: Vec<(u64, u64)> = self.placements(depth).collect();
        for (x, s) in candidates {
            self.place(depth, x, s);
            let stop = self.visit(depth + 1)?;
            self.unplace(depth, x, s);
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn leaf(&mut self) -> Result<bool, SearchError> {
        self.count += 1;
        if self.emitted < self.keep {
            let starter = PairSet::from_pairs_unchecked(self.cfg.n, self.stack.clone());
            let report = full_report(&starter);
            if !report.is_skolem || (self.cfg.require_strong && !report.is_strong) {
                return Err(SearchError::InvalidWitness { starter });
            }
            self.emitted += 1;
            (self.on_witness)(starter);
        }
        Ok(self.cfg.mode == SearchMode::FirstWitness && self.emitted >= self.keep)
    }
}

/// Single-threaded search, handing each witness to `on_witness` as soon as
/// it is found and verified.
pub fn search_streaming<F>(cfg: &SearchConfig, on_witness: F) -> Result<SearchResult, SearchError>
where
    F: FnMut(&PairSet),
{
    cfg.validate()?;
    let start = Instant::now();
    let mut on_witness = on_witness;
    let mut walker = Walker::new(cfg, |s: PairSet| on_witness(&s));
    walker.visit(0)?;
    Ok(SearchResult {
        n: cfg.n.get(),
        require_strong: cfg.require_strong,
        count: walker.count,
        witnesses: Vec::new(),
        nodes_explored: walker.nodes,
        wall_time: start.elapsed(),
    })
}

/// Runs the search, in parallel when `cfg.parallel` is set.
pub fn search_skolem_starters(cfg: &SearchConfig) -> Result<SearchResult, SearchError> {
    cfg.validate()?;
    if !cfg.parallel {
        let mut witnesses = Vec::new();
        let mut result = search_streaming(cfg, |s| witnesses.push(s.clone()))?;
        result.witnesses = witnesses;
        return Ok(result);
    }

    let start = Instant::now();
    let root = Walker::new(cfg, |_: PairSet| {});
    let branches: Vec<(u64, u64)> = root.placements(0).collect();
    let keep = cfg.keep();
    let partials: Vec<(u64, u64, Vec<PairSet>)> = branches
        .into_par_iter()
        .map(|(x, s)| {
            let mut found = Vec::new();
            let mut walker = Walker::new(cfg, |w: PairSet| found.push(w));
            walker.place(0, x, s);
            walker.visit(1)?;
            let (count, nodes) = (walker.count, walker.nodes);
            drop(walker);
            Ok((count, nodes, found))
        })
        .collect::<Result<_, SearchError>>()?;

    let mut count = 0;
    let mut nodes = 1; // root
    let mut witnesses = Vec::new();
    for (c, k, w) in partials {
        count += c;
        nodes += k;
        let room = keep.saturating_sub(witnesses.len());
        witnesses.extend(w.into_iter().take(room));
    }
    if cfg.mode == SearchMode::FirstWitness {
        count = witnesses.len() as u64;
    }
    Ok(SearchResult {
        n: cfg.n.get(),
        require_strong: cfg.require_strong,
        count,
        witnesses,
        nodes_explored: nodes,
        wall_time: start.elapsed(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossValidationEntry {
    pub q: u64,
    /// Exact number of strong Skolem starters of `Z_q`.
    pub strong_skolem_count: u64,
    /// The constructions that were located, `S_2` then `S_{(q+1)/2}`.
    pub found: Vec<(BetaChoice, PairSet)>,
}

/// Checks that both constructed strong Skolem starters (canonical `α`) of
/// every prime `q ≡ 3 (mod 8)` in `11..=q_max` occur in the exhaustive
/// enumeration of strong Skolem starters of `Z_q`.
pub fn cross_validate_construction(q_max: u64) -> Result<Vec<CrossValidationEntry>, SearchError> {
    let mut out = Vec::new();
    for q in (11..=q_max).step_by(8).filter(|&q| is_prime(q)) {
        let cfg = SearchConfig::new(q, SearchMode::EnumerateAll)?
            .strong(true)
            .parallel(true);
        let result = search_skolem_starters(&cfg)?;
        let all: HashSet<&PairSet> = result.witnesses.iter().collect();
        let mut found = Vec::new();
        for beta in BetaChoice::ALL {
            let starter = build_strong_skolem(q, beta, None)?;
            if !all.contains(&starter) {
                return Err(SearchError::ConstructionMissing { q, beta, starter });
            }
            found.push((beta, starter));
        }
        out.push(CrossValidationEntry {
            q,
            strong_skolem_count: result.count,
            found,
        });
    }
    Ok(out)
}

/// Every `β ∈ NQR(q) \ {q - 1}` for which `S_β` is also Skolem, given the
/// generator `alpha` (default: smallest). `q` must be a prime `≡ 3 (mod 4)`.
pub fn skolem_betas(q: u64, alpha: Option<u64>) -> Result<Vec<u64>, SearchError> {
    let table = build_qr_table(Modulus::prime(q)?)?;
    let alpha = alpha.unwrap_or_else(|| table.smallest_generator().value());
    let mut out = Vec::new();
    for &beta in table.non_residues() {
        if beta == q - 1 {
            continue;
        }
        let params = ConstructionParams::with_table(&table, alpha, beta)?;
        if full_report(&build_s_beta(&params)).is_skolem {
            out.push(beta);
        }
    }
    Ok(out)
}
