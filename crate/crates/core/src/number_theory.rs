//! Exact modular arithmetic over small prime moduli.
//!
//! Everything here works on `u64` values below [`MAX_MODULUS`], so a product
//! of two residues always fits in 64 bits. Primality testing is the one
//! exception: [`is_prime`] is deterministic over the whole `u64` range.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Largest modulus accepted by [`Modulus`]; `(n - 1)^2 < 2^64`.
pub const MAX_MODULUS: u64 = (1 << 31) - 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumberTheoryError {
    #[error("modulus {0} is smaller than 3")]
    TooSmall(u64),
    #[error("modulus {0} is even")]
    Even(u64),
    #[error("modulus {0} exceeds the supported maximum {MAX_MODULUS}")]
    TooLarge(u64),
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("value {value} is out of range for modulus {modulus}")]
    OutOfRange { value: u64, modulus: u64 },
    #[error("elements belong to different moduli ({0} and {1})")]
    ModulusMismatch(u64, u64),
    #[error("0 has no multiplicative inverse modulo {0}")]
    ZeroInverse(u64),
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: u64, modulus: u64 },
}

pub type Result<T, E = NumberTheoryError> = std::result::Result<T, E>;

/// An odd modulus `n >= 3`, tagged with its primality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus {
    n: u64,
    prime: bool,
}

impl Modulus {
    pub fn new(n: u64) -> Result<Self> {
        if n < 3 {
            return Err(NumberTheoryError::TooSmall(n));
        }
        if n % 2 == 0 {
            return Err(NumberTheoryError::Even(n));
        }
        if n > MAX_MODULUS {
            return Err(NumberTheoryError::TooLarge(n));
        }
        Ok(Modulus {
            n,
            prime: is_prime(n),
        })
    }

    /// Like [`Modulus::new`], but additionally rejects composite `n`.
    pub fn prime(n: u64) -> Result<Self> {
        let m = Self::new(n)?;
        m.require_prime()?;
        Ok(m)
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.n
    }

    #[inline]
    pub fn is_prime(self) -> bool {
        self.prime
    }

    /// `(n - 1) / 2`, the number of pairs in a starter for `Z_n`.
    #[inline]
    pub fn half(self) -> u64 {
        (self.n - 1) / 2
    }

    pub fn element(self, value: u64) -> Result<ZnElement> {
        if value >= self.n {
            return Err(NumberTheoryError::OutOfRange {
                value,
                modulus: self.n,
            });
        }
        Ok(ZnElement {
            value,
            modulus: self,
        })
    }

    /// Reduces an arbitrary integer into `Z_n`.
    pub fn reduce(self, value: i64) -> ZnElement {
        ZnElement {
            value: value.rem_euclid(self.n as i64) as u64,
            modulus: self,
        }
    }

    pub(crate) fn require_prime(self) -> Result<()> {
        if self.prime {
            Ok(())
        } else {
            Err(NumberTheoryError::NotPrime(self.n))
        }
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.n)
    }
}

/// A residue in `{0, ..., n - 1}` carrying its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZnElement {
    value: u64,
    modulus: Modulus,
}

impl ZnElement {
    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn same_modulus(self, other: ZnElement) -> Result<u64> {
        if self.modulus.n != other.modulus.n {
            return Err(NumberTheoryError::ModulusMismatch(
                self.modulus.n,
                other.modulus.n,
            ));
        }
        Ok(self.modulus.n)
    }

    pub fn add(self, other: ZnElement) -> Result<ZnElement> {
        let n = self.same_modulus(other)?;
        Ok(self.with_value((self.value + other.value) % n))
    }

    pub fn sub(self, other: ZnElement) -> Result<ZnElement> {
        let n = self.same_modulus(other)?;
        Ok(self.with_value((self.value + n - other.value) % n))
    }

    pub fn mul(self, other: ZnElement) -> Result<ZnElement> {
        let n = self.same_modulus(other)?;
        Ok(self.with_value(self.value * other.value % n))
    }

    pub fn neg(self) -> ZnElement {
        self.with_value((self.modulus.n - self.value) % self.modulus.n)
    }

    pub fn pow(self, exp: u64) -> ZnElement {
        self.with_value(pow_mod(self.value, exp, self.modulus.n))
    }

    pub fn inverse(self) -> Result<ZnElement> {
        mod_inverse(self)
    }

    fn with_value(self, value: u64) -> ZnElement {
        ZnElement {
            value,
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for ZnElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[inline]
fn mul_mod_u128(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `base^exp mod m` by square-and-multiply. Valid for any `m >= 1`.
pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u128(acc, b, m);
        }
        b = mul_mod_u128(b, b, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin. The first twelve primes as witnesses are
/// sufficient for every `n < 3.3 * 10^24`, hence for all of `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u128(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Distinct prime factors of `m`, ascending.
pub fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push(m);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Residuosity {
    #[serde(rename = "ZERO")]
    Zero,
    #[serde(rename = "QR")]
    Residue,
    #[serde(rename = "NQR")]
    NonResidue,
}

impl fmt::Display for Residuosity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Residuosity::Zero => "ZERO",
            Residuosity::Residue => "QR",
            Residuosity::NonResidue => "NQR",
        })
    }
}

/// Classifies `x` by Euler's criterion: `x^((q-1)/2)` is `1` for residues
/// and `q - 1` for non-residues.
pub fn legendre_class(x: ZnElement) -> Result<Residuosity> {
    let q = x.modulus();
    q.require_prime()?;
    Ok(euler_class(x.value(), q.get()))
}

fn euler_class(x: u64, q: u64) -> Residuosity {
    if x == 0 {
        return Residuosity::Zero;
    }
    let e = pow_mod(x, (q - 1) / 2, q);
    if e == 1 {
        Residuosity::Residue
    } else {
        debug_assert_eq!(e, q - 1);
        Residuosity::NonResidue
    }
}

/// Inverse by the extended Euclidean algorithm.
pub fn mod_inverse(x: ZnElement) -> Result<ZnElement> {
    let n = x.modulus().get();
    if x.is_zero() {
        return Err(NumberTheoryError::ZeroInverse(n));
    }
    let (mut r0, mut r1) = (n as i64, x.value() as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return Err(NumberTheoryError::NotInvertible {
            value: x.value(),
            modulus: n,
        });
    }
    Ok(x.modulus().reduce(t0))
}

/// Multiplicative order of a unit modulo a prime.
pub fn multiplicative_order(x: ZnElement) -> Result<u64> {
    let q = x.modulus();
    q.require_prime()?;
    if x.is_zero() {
        return Err(NumberTheoryError::ZeroInverse(q.get()));
    }
    let mut order = q.get() - 1;
    for p in prime_factors(order) {
        while order % p == 0 && pow_mod(x.value(), order / p, q.get()) == 1 {
            order /= p;
        }
    }
    Ok(order)
}

/// Residuosity classification of `Z_q^*` for a prime `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QrTable {
    modulus: Modulus,
    classes: Vec<Residuosity>,
    residues: Vec<u64>,
    non_residues: Vec<u64>,
    smallest_generator: ZnElement,
}

impl QrTable {
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// `QR(q)`, ascending.
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    /// `NQR(q)`, ascending.
    pub fn non_residues(&self) -> &[u64] {
        &self.non_residues
    }

    /// Panics if `x >= q`.
    pub fn class_of(&self, x: u64) -> Residuosity {
        self.classes[x as usize]
    }

    pub fn is_residue(&self, x: u64) -> bool {
        self.class_of(x) == Residuosity::Residue
    }

    pub fn smallest_generator(&self) -> ZnElement {
        self.smallest_generator
    }

    /// Every element of `QR(q)` of order exactly `(q - 1) / 2`, ascending.
    pub fn generators(&self) -> Vec<ZnElement> {
        let q = self.modulus;
        let factors = prime_factors(q.half());
        self.residues
            .iter()
            .copied()
            .filter(|&x| generates_residues(x, q, &factors))
            .map(|x| ZnElement { value: x, modulus: q })
            .collect()
    }

    pub fn is_generator(&self, x: u64) -> bool {
        x < self.modulus.get()
            && self.is_residue(x)
            && generates_residues(x, self.modulus, &prime_factors(self.modulus.half()))
    }
}

/// For `x` in `QR(q)`, whose order divides `m = (q-1)/2`: `x` has order `m`
/// iff `x^(m/p) != 1` for every prime `p | m`.
fn generates_residues(x: u64, q: Modulus, factors_of_half: &[u64]) -> bool {
    let m = q.half();
    factors_of_half
        .iter()
        .all(|&p| pow_mod(x, m / p, q.get()) != 1)
}

pub fn build_qr_table(q: Modulus) -> Result<QrTable> {
    q.require_prime()?;
    let n = q.get();
    let classes: Vec<Residuosity> = (0..n).map(|x| euler_class(x, n)).collect();
    let mut residues = Vec::with_capacity(q.half() as usize);
    let mut non_residues = Vec::with_capacity(q.half() as usize);
    for x in 1..n {
        match classes[x as usize] {
            Residuosity::Residue => residues.push(x),
            Residuosity::NonResidue => non_residues.push(x),
            Residuosity::Zero => unreachable!(),
        }
    }
    let factors = prime_factors(q.half());
    let smallest = residues
        .iter()
        .copied()
        .find(|&x| generates_residues(x, q, &factors))
        .expect("QR(q) is cyclic");
    Ok(QrTable {
        modulus: q,
        classes,
        residues,
        non_residues,
        smallest_generator: ZnElement {
            value: smallest,
            modulus: q,
        },
    })
}

pub fn qr_generators(q: Modulus) -> Result<Vec<ZnElement>> {
    Ok(build_qr_table(q)?.generators())
}
