//! Acceptance suite. Runs every criterion, prints one line per criterion and
//! exits non-zero if any fails or overruns its time budget.

mod common;

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use common::*;
use skolem_core::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn flat(s: &PairSet) -> Vec<(u64, u64)> {
    s.pairs().iter().map(|p| (p.low, p.high)).collect()
}

fn all_three(s: &PairSet) -> Result<(), String> {
    let starter = verify_starter(s);
    ensure(starter.holds, || format!("not a starter: {:?}", starter.witnesses))?;
    let strong = verify_strong(s).map_err(|e| e.to_string())?;
    ensure(strong.holds, || format!("not strong: {:?}", strong.witnesses))?;
    let skolem = verify_skolem(s).map_err(|e| e.to_string())?;
    ensure(skolem.holds(), || format!("not Skolem: {:?}", skolem.witnesses))
}

fn theorem_primes(max: u64) -> impl Iterator<Item = u64> {
    primes_up_to(max).into_iter().filter(|&q| q % 8 == 3 && q >= 11)
}

fn ac1_golden_z11() -> Outcome {
    let s = build_strong_skolem(11, BetaChoice::Half, Some(4)).map_err(|e| e.to_string())?;
    let expected = vec![(1, 6), (2, 4), (3, 7), (5, 8), (9, 10)];
    ensure(flat(&s) == expected, || format!("got {:?}", flat(&s)))?;
    Ok("S_6 over Z_11 with α = 4".into())
}

fn ac2_golden_tables() -> Outcome {
    for tab in &TABLES {
        let params = ConstructionParams::new(tab.q, tab.alpha, tab.beta).map_err(|e| e.to_string())?;
        let s = build_s_beta(&params);
        ensure(flat(&s) == canonical(tab.pairs), || format!("{} mismatch: {:?}", tab.name, flat(&s)))?;
        let choice = if tab.beta == 2 { BetaChoice::Two } else { BetaChoice::Half };
        let again = build_strong_skolem(tab.q, choice, Some(tab.alpha)).map_err(|e| e.to_string())?;
        ensure(again == s, || format!("{}: build_strong_skolem disagrees", tab.name))?;
    }
    Ok(format!("{} tables", TABLES.len()))
}

fn ac3_theorem_sweep() -> Outcome {
    let mut checked = 0;
    for q in theorem_primes(1500) {
        for choice in BetaChoice::ALL {
            let s = build_strong_skolem(q, choice, None).map_err(|e| e.to_string())?;
            all_three(&s).map_err(|e| format!("q={q} β={choice}: {e}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} starters, q ≤ 1500"))
}

fn ac4_every_generator() -> Outcome {
    let mut checked = 0;
    for q in theorem_primes(500) {
        for alpha in qr_generators(Modulus::new(q).unwrap()).map_err(|e| e.to_string())? {
            for choice in BetaChoice::ALL {
                let s = build_strong_skolem(q, choice, Some(alpha.value())).map_err(|e| e.to_string())?;
                all_three(&s).map_err(|e| format!("q={q} α={alpha} β={choice}: {e}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (q, α, β) triples, q ≤ 500"))
}

fn ac5_strong_starter_sweep() -> Outcome {
    let mut checked = 0;
    for q in primes_up_to(500).into_iter().filter(|&q| q % 4 == 3 && q != 3) {
        let table = build_qr_table(Modulus::new(q).unwrap()).map_err(|e| e.to_string())?;
        let alpha = table.smallest_generator().value();
        for &beta in table.non_residues().iter().filter(|&&b| b != q - 1) {
            let params = ConstructionParams::with_table(&table, alpha, beta).map_err(|e| e.to_string())?;
            let s = build_s_beta(&params);
            let starter = verify_starter(&s);
            ensure(starter.holds, || format!("q={q} β={beta}: {:?}", starter.witnesses))?;
            let strong = verify_strong(&s).map_err(|e| e.to_string())?;
            ensure(strong.holds, || format!("q={q} β={beta}: {:?}", strong.witnesses))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (q, β) pairs, q ≤ 500"))
}

fn ac6_number_theory() -> Outcome {
    let mut primes = 0;
    for q in primes_up_to(1000).into_iter().filter(|&q| q > 2) {
        let m = Modulus::new(q).unwrap();
        let class = |x: u64| legendre_class(m.element(x).unwrap()).unwrap();
        let squares = squares(q);
        ensure(squares.len() as u64 == (q - 1) / 2, || format!("q={q}: |QR| wrong"))?;
        for x in 1..q {
            let euler = class(x) == Residuosity::Residue;
            ensure(euler == squares.contains(&x), || format!("q={q} x={x}: Euler vs squares"))?;
            if q % 4 == 3 {
                ensure(class(x) != class(q - x), || format!("q={q} x={x}: negation did not flip"))?;
            }
        }
        let minus_one = if q % 4 == 1 { Residuosity::Residue } else { Residuosity::NonResidue };
        ensure(class(q - 1) == minus_one, || format!("q={q}: -1 misclassified"))?;
        if q % 8 == 3 {
            ensure(class(2) == Residuosity::NonResidue, || format!("q={q}: 2 not NQR"))?;
            ensure(class((q + 1) / 2) == Residuosity::NonResidue, || format!("q={q}: 1/2 not NQR"))?;
        }
        primes += 1;
    }
    Ok(format!("{primes} odd primes ≤ 1000"))
}

fn ac7_cross_validation() -> Outcome {
    let mut summary = Vec::new();
    for q in [11u64, 19] {
        let cfg = SearchConfig::new(q, SearchMode::EnumerateAll).map_err(|e| e.to_string())?;
        let seq = search_skolem_starters(&cfg).map_err(|e| e.to_string())?;
        let par = search_skolem_starters(&cfg.clone().parallel(true)).map_err(|e| e.to_string())?;
        ensure(seq.count == par.count && seq.witnesses == par.witnesses, || {
            format!("q={q}: parallel {} vs sequential {}", par.count, seq.count)
        })?;
        ensure(seq.count == seq.witnesses.len() as u64, || format!("q={q}: witness count"))?;
        for w in &seq.witnesses {
            all_three(w).map_err(|e| format!("q={q} witness {w:?}: {e}"))?;
        }
        let set: HashSet<&PairSet> = seq.witnesses.iter().collect();
        for choice in BetaChoice::ALL {
            let mut alphas: Vec<Option<u64>> = vec![None];
            alphas.extend(TABLES.iter().filter(|t| t.q == q).map(|t| Some(t.alpha)));
            for alpha in alphas {
                let s = build_strong_skolem(q, choice, alpha).map_err(|e| e.to_string())?;
                ensure(set.contains(&s), || format!("q={q} β={choice}: construction not enumerated"))?;
            }
        }
        let report = cross_validate_construction(q).map_err(|e| e.to_string())?;
        ensure(report.last().map(|e| e.strong_skolem_count) == Some(seq.count), || {
            format!("q={q}: cross-validation count")
        })?;
        summary.push(format!("n={q}: {} strong Skolem starters", seq.count));
    }
    Ok(summary.join(", "))
}

fn ac8_n9_probe() -> Outcome {
    let cfg = SearchConfig::new(9, SearchMode::CountAll).map_err(|e| e.to_string())?;
    let r = search_skolem_starters(&cfg).map_err(|e| e.to_string())?;
    ensure(r.count == 0, || format!("expected 0, found {}", r.count))?;
    Ok(format!("count = 0 ({} nodes)", r.nodes_explored))
}

fn random_pool(n: u64, rng: &mut StdRng) -> Vec<Vec<(u64, u64)>> {
    let t = ((n - 1) / 2) as usize;
    let cfg = SearchConfig::new(n, SearchMode::FirstWitness)
        .unwrap()
        .strong(false)
        .limit(Some(2000));
    let skolem: Vec<Vec<(u64, u64)>> = search_skolem_starters(&cfg)
        .unwrap()
        .witnesses
        .iter()
        .map(flat)
        .collect();
    let units: Vec<u64> = (1..n).filter(|&c| (1..n).any(|d| c * d % n == 1)).collect();
    let mut pool = Vec::with_capacity(1000);
    while pool.len() < 1000 {
        let pairs: Vec<(u64, u64)> = match pool.len() % 4 {
            0 => {
                let mut elems: Vec<u64> = (1..n).collect();
                elems.shuffle(rng);
                elems.chunks(2).map(|c| (c[0], c[1])).collect()
            }
            1 => (0..t)
                .map(|_| {
                    let a = rng.gen_range(1..n);
                    let mut b = rng.gen_range(1..n);
                    while b == a {
                        b = rng.gen_range(1..n);
                    }
                    (a, b)
                })
                .collect(),
            2 => skolem.choose(rng).unwrap().clone(),
            _ => {
                let c = *units.choose(rng).unwrap();
                skolem.choose(rng).unwrap().iter().map(|&(a, b)| (a * c % n, b * c % n)).collect()
            }
        };
        pool.push(pairs);
    }
    pool
}

fn ac9_verifier_oracle() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_2024);
    let mut tallies = Vec::new();
    for n in [11u64, 19, 27] {
        let (mut starters, mut strong, mut skolem) = (0, 0, 0);
        for raw in random_pool(n, &mut rng) {
            let s = PairSet::from_pairs(n, raw.iter().copied()).map_err(|e| e.to_string())?;
            let report = full_report(&s);
            let (a, b, c) = (
                naive_is_starter(n, &raw),
                naive_is_strong(n, &raw),
                naive_is_skolem(n, &raw),
            );
            ensure(verify_starter(&s).holds == a, || format!("n={n} starter: {raw:?}"))?;
            ensure(report.is_starter == a, || format!("n={n} report starter: {raw:?}"))?;
            ensure(report.is_strong == b, || format!("n={n} strong: {raw:?}"))?;
            ensure(report.is_skolem == c, || format!("n={n} skolem: {raw:?}"))?;
            ensure(verify_strong(&s).map(|v| v.holds).unwrap_or(false) == b, || {
                format!("n={n} verify_strong: {raw:?}")
            })?;
            ensure(verify_skolem(&s).map(|v| v.holds()).unwrap_or(false) == c, || {
                format!("n={n} verify_skolem: {raw:?}")
            })?;
            ensure(verify_strong(&s).is_err() == !a, || format!("n={n} error path: {raw:?}"))?;
            starters += a as u32;
            strong += b as u32;
            skolem += c as u32;
        }
        tallies.push(format!("n={n}: {starters}/{strong}/{skolem}"));
    }
    Ok(format!("1000 sets per n, starter/strong/Skolem positives {}", tallies.join(", ")))
}

struct Criterion {
    id: &'static str,
    title: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: "AC1", title: "golden Z_11 S_6", budget: Duration::from_millis(1), run: ac1_golden_z11 },
        Criterion { id: "AC2", title: "golden tables Z_11/Z_19/Z_43", budget: Duration::from_millis(10), run: ac2_golden_tables },
        Criterion { id: "AC3", title: "strong Skolem sweep q ≤ 1500", budget: Duration::from_secs(10), run: ac3_theorem_sweep },
        Criterion { id: "AC4", title: "every QR generator, q ≤ 500", budget: Duration::from_secs(60), run: ac4_every_generator },
        Criterion { id: "AC5", title: "strong starter sweep, q ≡ 3 (mod 4) ≤ 500", budget: Duration::from_secs(60), run: ac5_strong_starter_sweep },
        Criterion { id: "AC6", title: "number theory properties, q ≤ 1000", budget: Duration::from_secs(5), run: ac6_number_theory },
        Criterion { id: "AC7", title: "search cross-validation n = 11, 19", budget: Duration::from_secs(180), run: ac7_cross_validation },
        Criterion { id: "AC8", title: "strong Skolem count n = 9", budget: Duration::from_secs(60), run: ac8_n9_probe },
        Criterion { id: "AC9", title: "fast vs naive verifiers", budget: Duration::from_secs(120), run: ac9_verifier_oracle },
    ];

    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > c.budget => {
                Err(format!("{detail}; took {elapsed:?}, budget {:?}", c.budget))
            }
            other => other,
        };
        match outcome {
            Ok(detail) => println!("[PASS] {} {} ({elapsed:.2?}): {detail}", c.id, c.title),
            Err(why) => {
                failures += 1;
                println!("[FAIL] {} {} ({elapsed:.2?}): {why}", c.id, c.title);
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
