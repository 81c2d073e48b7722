//! Test-only oracles, kept independent of the library's fast paths.

#![allow(dead_code)]

use std::collections::BTreeSet;

/// Sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// `{ y^2 mod q : y in 1..q }`.
pub fn squares(q: u64) -> BTreeSet<u64> {
    (1..q).map(|y| y * y % q).collect()
}

/// Quadratic-time re-implementation of the starter definition.
pub fn naive_is_starter(n: u64, pairs: &[(u64, u64)]) -> bool {
    for e in 1..n {
        let hits = pairs.iter().filter(|&&(x, y)| x == e || y == e).count()
            + pairs.iter().filter(|&&(x, y)| x == e && y == e).count();
        if hits != 1 {
            return false;
        }
    }
    for d in 1..n {
        let hits = pairs
            .iter()
            .filter(|&&(x, y)| (x + n - y) % n == d || (y + n - x) % n == d)
            .count();
        if hits != 1 {
            return false;
        }
    }
    true
}

pub fn naive_is_strong(n: u64, pairs: &[(u64, u64)]) -> bool {
    if !naive_is_starter(n, pairs) {
        return false;
    }
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            if (pairs[i].0 + pairs[i].1) % n == (pairs[j].0 + pairs[j].1) % n {
                return false;
            }
        }
    }
    true
}

/// Integer differences, taken with the larger element first, are exactly
/// `1..=(n-1)/2`. Does not require the starter property.
pub fn naive_skolem_differences(n: u64, pairs: &[(u64, u64)]) -> bool {
    let t = (n - 1) / 2;
    (1..=t).all(|i| {
        pairs
            .iter()
            .filter(|&&(x, y)| x.max(y) - x.min(y) == i)
            .count()
            == 1
    }) && pairs.len() as u64 == t
}

pub fn naive_is_skolem(n: u64, pairs: &[(u64, u64)]) -> bool {
    naive_is_starter(n, pairs) && naive_skolem_differences(n, pairs)
}

pub fn canonical(pairs: &[(u64, u64)]) -> Vec<(u64, u64)> {
    let mut v: Vec<(u64, u64)> = pairs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    v.sort_unstable();
    v
}

/// A published table: modulus, α, β, the pairs as displayed.
pub struct Table {
    pub name: &'static str,
    pub q: u64,
    pub alpha: u64,
    pub beta: u64,
    pub pairs: &'static [(u64, u64)],
}

pub const TABLES: [Table; 6] = [
    Table {
        name: "Z_11 S_2",
        q: 11,
        alpha: 4,
        beta: 2,
        pairs: &[(1, 2), (7, 9), (3, 6), (4, 8), (5, 10)],
    },
    Table {
        name: "Z_11 S_6",
        q: 11,
        alpha: 4,
        beta: 6,
        pairs: &[(9, 10), (2, 4), (5, 8), (3, 7), (1, 6)],
    },
    Table {
        name: "Z_19 S_2",
        q: 19,
        alpha: 4,
        beta: 2,
        pairs: &[
            (1, 2), (15, 17), (13, 16), (4, 8), (5, 10), (6, 12), (7, 14), (3, 11), (9, 18),
        ],
    },
    Table {
        name: "Z_19 S_10",
        q: 19,
        alpha: 4,
        beta: 10,
        pairs: &[
            (17, 18), (2, 4), (3, 6), (11, 15), (9, 14), (7, 13), (5, 12), (8, 16), (1, 10),
        ],
    },
    Table {
        name: "Z_43 S_2",
        q: 43,
        alpha: 9,
        beta: 2,
        pairs: &[
            (1, 2), (39, 41), (37, 40), (4, 8), (33, 38), (6, 12), (29, 36),
            (27, 35), (9, 18), (10, 20), (11, 22), (19, 31), (13, 26), (14, 28),
            (15, 30), (16, 32), (17, 34), (7, 25), (5, 24), (3, 23), (21, 42),
        ],
    },
    Table {
        name: "Z_43 S_22",
        q: 43,
        alpha: 9,
        beta: 22,
        pairs: &[
            (41, 42), (2, 4), (3, 6), (35, 39), (5, 10), (31, 37), (7, 14),
            (8, 16), (25, 34), (23, 33), (21, 32), (12, 24), (17, 30), (15, 29),
            (13, 28), (11, 27), (9, 26), (18, 36), (19, 38), (20, 40), (1, 22),
        ],
    },
];

/// The same tables in construction order `{α^i, β α^i}`, i = 1, 2, ...
pub const CONSTRUCTION_ORDER: [&[(u64, u64)]; 6] = [
    &[(4, 8), (5, 10), (9, 7), (3, 6), (1, 2)],
    &[(4, 2), (5, 8), (9, 10), (3, 7), (1, 6)],
    &[(4, 8), (16, 13), (7, 14), (9, 18), (17, 15), (11, 3), (6, 12), (5, 10), (1, 2)],
    &[(4, 2), (16, 8), (7, 13), (9, 14), (17, 18), (11, 15), (6, 3), (5, 12), (1, 10)],
    &[
        (9, 18), (38, 33), (41, 39), (25, 7), (10, 20), (4, 8), (36, 29),
        (23, 3), (35, 27), (14, 28), (40, 37), (16, 32), (15, 30), (6, 12),
        (11, 22), (13, 26), (31, 19), (21, 42), (17, 34), (24, 5), (1, 2),
    ],
    &[
        (9, 26), (38, 19), (41, 42), (25, 34), (10, 5), (4, 2), (36, 18),
        (23, 33), (35, 39), (14, 7), (40, 20), (16, 8), (15, 29), (6, 3),
        (11, 27), (13, 28), (31, 37), (21, 32), (17, 30), (24, 12), (1, 22),
    ],
];
