//! Quadratic-residue starters over `Z_q`.
//!
//! For a prime `q ≡ 3 (mod 4)`, a generator `α` of `QR(q)` and a non-residue
//! `β ∉ {1, -1}`, the set
//!
//! ```text
//! S_β = { {α^i, β·α^i} : i = 1, ..., (q-1)/2 }
//! ```
//!
//! is a strong starter. When `q ≡ 3 (mod 8)`, `2` is a non-residue, and the
//! choices `β = 2` and `β = 2^-1 = (q+1)/2` make `S_β` Skolem as well.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::number_theory::{
    build_qr_table, is_prime, mod_inverse, Modulus, NumberTheoryError, QrTable, Residuosity,
    ZnElement,
};
use crate::starter::{Pair, PairSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    NumberTheory(#[from] NumberTheoryError),
    #[error("q = 3 is degenerate: QR(3) = {{1}} is trivial")]
    ModulusThree,
    #[error("q ≡ {residue} (mod 4): construction requires q ≡ 3 (mod 4)")]
    NotThreeModFour { q: u64, residue: u64 },
    #[error("q ≡ {residue} (mod 8): Main Theorem inapplicable, requires q ≡ 3 (mod 8)")]
    MainTheoremInapplicable { q: u64, residue: u64 },
    #[error("alpha = {alpha} is not a generator of QR({q})")]
    AlphaNotGenerator { alpha: u64, q: u64 },
    #[error("beta = 1 gives degenerate pairs")]
    BetaIsOne,
    #[error("beta = q - 1 = {0} violates beta + 1 ≠ 0")]
    BetaIsMinusOne(u64),
    #[error("beta = {beta} is {class} mod {q}, must be a non-residue")]
    BetaNotNonResidue {
        beta: u64,
        q: u64,
        class: Residuosity,
    },
}

/// Validated `(q, α, β)` for [`build_s_beta`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstructionParams {
    q: Modulus,
    alpha: ZnElement,
    beta: ZnElement,
}

impl ConstructionParams {
    pub fn new(q: u64, alpha: u64, beta: u64) -> Result<Self, ConstructionError> {
        let table = table_for(q, 4)?;
        Self::with_table(&table, alpha, beta)
    }

    /// Reuses an existing table; `q` is taken from it.
    pub fn with_table(table: &QrTable, alpha: u64, beta: u64) -> Result<Self, ConstructionError> {
        let q = table.modulus();
        check_modulus(q.get(), 4)?;
        let alpha_el = q.element(alpha)?;
        let beta_el = q.element(beta)?;
        if !table.is_generator(alpha) {
            return Err(ConstructionError::AlphaNotGenerator { alpha, q: q.get() });
        }
        if beta == 1 {
            return Err(ConstructionError::BetaIsOne);
        }
        if beta == q.get() - 1 {
            return Err(ConstructionError::BetaIsMinusOne(beta));
        }
        let class = table.class_of(beta);
        if class != Residuosity::NonResidue {
            return Err(ConstructionError::BetaNotNonResidue {
                beta,
                q: q.get(),
                class,
            });
        }
        Ok(ConstructionParams {
            q,
            alpha: alpha_el,
            beta: beta_el,
        })
    }

    pub fn q(&self) -> Modulus {
        self.q
    }

    pub fn alpha(&self) -> ZnElement {
        self.alpha
    }

    pub fn beta(&self) -> ZnElement {
        self.beta
    }
}

/// Checks `q` prime, `q ≠ 3` and `q ≡ 3 (mod class)` for `class` 4 or 8.
fn check_modulus(q: u64, class: u64) -> Result<Modulus, ConstructionError> {
    let m = Modulus::prime(q)?;
    if q == 3 {
        return Err(ConstructionError::ModulusThree);
    }
    if class == 8 && q % 8 != 3 {
        return Err(ConstructionError::MainTheoremInapplicable { q, residue: q % 8 });
    }
    if q % 4 != 3 {
        return Err(ConstructionError::NotThreeModFour { q, residue: q % 4 });
    }
    Ok(m)
}

fn table_for(q: u64, class: u64) -> Result<QrTable, ConstructionError> {
    Ok(build_qr_table(check_modulus(q, class)?)?)
}

/// `{ {α^i, β·α^i} : i = 1..=(q-1)/2 }`, canonicalized.
pub fn build_s_beta(params: &ConstructionParams) -> PairSet {
    let q = params.q.get();
    let (alpha, beta) = (params.alpha.value(), params.beta.value());
    let mut power = 1u64;
    let pairs = (0..params.q.half())
        .map(|_| {
            power = power * alpha % q;
            Pair::new(power, beta * power % q)
        })
        .collect();
    PairSet::from_pairs_unchecked(params.q, pairs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BetaChoice {
    /// `β = 2`.
    Two,
    /// `β = 2^-1 = (q + 1) / 2`.
    Half,
}

impl BetaChoice {
    pub const ALL: [BetaChoice; 2] = [BetaChoice::Two, BetaChoice::Half];

    pub fn value(self, q: u64) -> u64 {
        match self {
            BetaChoice::Two => 2,
            BetaChoice::Half => (q + 1) / 2,
        }
    }
}

impl fmt::Display for BetaChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BetaChoice::Two => "2",
            BetaChoice::Half => "half",
        })
    }
}

impl FromStr for BetaChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "2" | "two" => Ok(BetaChoice::Two),
            "half" => Ok(BetaChoice::Half),
            other => Err(format!("unknown beta choice {other:?}, expected `2` or `half`")),
        }
    }
}

/// Parameters for the strong Skolem construction; `alpha` defaults to the
/// smallest generator of `QR(q)`.
pub fn strong_skolem_params(
    q: u64,
    choice: BetaChoice,
    alpha: Option<u64>,
) -> Result<ConstructionParams, ConstructionError> {
    let table = table_for(q, 8)?;
    let alpha = alpha.unwrap_or_else(|| table.smallest_generator().value());
    ConstructionParams::with_table(&table, alpha, choice.value(q))
}

/// `S_2` or `S_{(q+1)/2}` for a prime `q ≡ 3 (mod 8)`, `q ≥ 11`.
pub fn build_strong_skolem(
    q: u64,
    choice: BetaChoice,
    alpha: Option<u64>,
) -> Result<PairSet, ConstructionError> {
    Ok(build_s_beta(&strong_skolem_params(q, choice, alpha)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateEntry {
    pub pair: Pair,
    pub difference: u64,
    /// `difference ∈ {1, ..., (q-1)/2}`.
    pub in_half_set: bool,
}

/// Per-pair evidence that the ordered differences land in the half set
/// `{1, ..., (q-1)/2}` and cover it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HalfSetCertificate {
    pub entries: Vec<CertificateEntry>,
    /// The differences are exactly `{1, ..., (q-1)/2}`.
    pub differences_exact: bool,
}

impl HalfSetCertificate {
    pub fn holds(&self) -> bool {
        self.differences_exact && self.entries.iter().all(|e| e.in_half_set)
    }
}

/// Never rejects: a pair set from elsewhere simply yields a failing
/// certificate.
pub fn half_set_certificate(s: &PairSet) -> HalfSetCertificate {
    let t = s.modulus().half();
    let mut seen = vec![false; t as usize + 1];
    let entries: Vec<CertificateEntry> = s
        .pairs()
        .iter()
        .map(|&pair| {
            let difference = pair.span();
            let in_half_set = (1..=t).contains(&difference);
            if in_half_set {
                seen[difference as usize] = true;
            }
            CertificateEntry {
                pair,
                difference,
                in_half_set,
            }
        })
        .collect();
    let differences_exact = entries.iter().all(|e| e.in_half_set) && seen[1..].iter().all(|&b| b);
    HalfSetCertificate {
        entries,
        differences_exact,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremStarter {
    pub q: u64,
    pub beta_choice: BetaChoice,
    pub alpha: u64,
    pub beta: u64,
    pub starter: PairSet,
}

/// Both strong Skolem starters, with the canonical `α`, for every prime
/// `q ≡ 3 (mod 8)` in `11..=q_max`. Sorted by `q`, then `S_2` before
/// `S_{(q+1)/2}`.
pub fn enumerate_theorem_starters(q_max: u64) -> Vec<TheoremStarter> {
    let primes: Vec<u64> = (11..=q_max)
        .step_by(8)
        .filter(|&q| is_prime(q))
        .collect();
    primes
        .par_iter()
        .flat_map_iter(|&q| {
            let table = build_qr_table(Modulus::new(q).unwrap()).unwrap();
            let alpha = table.smallest_generator().value();
            BetaChoice::ALL.into_iter().map(move |choice| {
                let beta = choice.value(q);
                let params = ConstructionParams::with_table(&table, alpha, beta)
                    .expect("q ≡ 3 (mod 8) admits both choices");
                TheoremStarter {
                    q,
                    beta_choice: choice,
                    alpha,
                    beta,
                    starter: build_s_beta(&params),
                }
            })
        })
        .collect()
}

/// Convenience: `β = 2^-1` computed by inversion rather than `(q+1)/2`.
pub fn inverse_of_two(q: Modulus) -> Result<ZnElement, NumberTheoryError> {
    mod_inverse(q.element(2)?)
}
