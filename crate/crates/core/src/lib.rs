//! Strong Skolem starters for the cyclic group `Z_n`.
//!
//! - [`number_theory`]: primality, quadratic residues, generators of `QR(q)`.
//! - [`starter`]: the [`PairSet`] type and the starter / strong / Skolem
//!   verifiers.
//! - [`format`]: text and JSON encodings of pair sets.
//! - [`construction`]: the quadratic-residue starters `S_β`, Skolem for
//!   primes `q ≡ 3 (mod 8)` with `β ∈ {2, (q+1)/2}`.
//! - [`search`]: exhaustive enumeration of (strong) Skolem starters of small
//!   order, used to cross-check the construction.

pub mod construction;
pub mod format;
pub mod number_theory;
pub mod search;
pub mod starter;

pub use construction::{
    build_s_beta, build_strong_skolem, enumerate_theorem_starters, half_set_certificate,
    BetaChoice, ConstructionError, ConstructionParams, HalfSetCertificate, TheoremStarter,
};
pub use format::ParseError;
pub use number_theory::{
    build_qr_table, is_prime, legendre_class, mod_inverse, qr_generators, Modulus,
    NumberTheoryError, QrTable, Residuosity, ZnElement,
};
pub use search::{
    cross_validate_construction, search_skolem_starters, search_streaming, SearchConfig,
    SearchError, SearchMode, SearchResult,
};
pub use starter::{
    full_report, skolem_admissible, verify_skolem, verify_starter, verify_strong, Pair, PairSet,
    VerificationReport, Witness,
};
