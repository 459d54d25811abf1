//! Quick oracle checks, each compared against an independent computation.

use std::collections::BTreeSet;
use std::io::{self, Write};

use num_bigint::BigUint;
use primetree::codec::{encode_integer, encode_rational, eval_bounded, eval_factored, eval_integer_tree, BoundedEval};
use primetree::generator::{all_valid_trees_bruteforce, g_count, g_forest};
use primetree::rationals::{calkin_wilf_stream, h_count, h_forest, locate, rational_stream};
use primetree::sieve::{combinatorial_sieve, eratosthenes, literal_fixpoint_sieve};
use primetree::Tree;

type Check = fn() -> Result<(), String>;

const CHECKS: &[(&str, Check)] = &[
    ("integer roundtrip 1..=10000", integer_roundtrip),
    ("fraction roundtrip p, q <= 100", fraction_roundtrip),
    ("forest sizes match counts", forest_sizes),
    ("forests match brute force", forests_match_bruteforce),
    ("sieve matches eratosthenes up to 1000", sieve_matches),
    ("fixpoint sieve for q <= 7", fixpoint_sieve),
    ("rational forest sizes", rational_sizes),
    ("stream prefix through stage 2", stream_prefix),
    ("calkin-wilf against fusc", calkin_wilf),
    ("bounded tower evaluation", bounded_towers),
];

/// Prints one line per check; true when all pass.
pub fn run(out: &mut dyn Write) -> io::Result<bool> {
    let mut all = true;
    for (name, check) in CHECKS {
        match check() {
            Ok(()) => writeln!(out, "ok    {name}")?,
            Err(why) => {
                all = false;
                writeln!(out, "FAIL  {name}: {why}")?;
            }
        }
    }
    Ok(all)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn integer_roundtrip() -> Result<(), String> {
    for m in 1..=10_000u64 {
        let text = encode_integer(m).map_err(|e| e.to_string())?.to_string();
        let back: Tree = text.parse().map_err(|e| format!("{text}: {e}"))?;
        let value = eval_integer_tree(&back).map_err(|e| e.to_string())?;
        if value != BigUint::from(m) {
            return Err(format!("{m} came back as {value}"));
        }
    }
    Ok(())
}

fn fraction_roundtrip() -> Result<(), String> {
    for p in 1..=100u64 {
        for q in (1..=100u64).filter(|&q| gcd(p, q) == 1) {
            let tree = encode_rational(p, q).map_err(|e| e.to_string())?;
            let value = eval_factored(&tree).and_then(|f| f.to_value()).map_err(|e| e.to_string())?;
            let want = if q == 1 { p.to_string() } else { format!("{p}/{q}") };
            if value.to_string() != want {
                return Err(format!("{want} came back as {value}"));
            }
        }
    }
    Ok(())
}

fn forest_sizes() -> Result<(), String> {
    for (n, h) in [(1, 1), (1, 4), (2, 2), (3, 2), (2, 3)] {
        let size = g_forest(n, h).map_err(|e| e.to_string())?.len();
        let count = g_count(n, h).map_err(|e| e.to_string())?;
        if BigUint::from(size) != count {
            return Err(format!("n={n} h={h}: {size} trees, count {count}"));
        }
    }
    Ok(())
}

fn forests_match_bruteforce() -> Result<(), String> {
    for (n, h) in [(1, 3), (2, 2), (3, 2), (2, 3)] {
        let built = g_forest(n, h).map_err(|e| e.to_string())?;
        let brute = all_valid_trees_bruteforce(n, h).map_err(|e| e.to_string())?;
        if built != brute {
            return Err(format!("n={n} h={h}: {} built, {} by brute force", built.len(), brute.len()));
        }
    }
    Ok(())
}

fn sieve_matches() -> Result<(), String> {
    let primes = eratosthenes(2000);
    for &q in primes.iter().take_while(|&&q| q <= 1000) {
        let got = combinatorial_sieve(q).map_err(|e| e.to_string())?;
        let want: Vec<u64> = primes.iter().copied().filter(|&p| p > q && p < 2 * q).collect();
        if got != want {
            return Err(format!("q={q}: {got:?}"));
        }
    }
    Ok(())
}

fn fixpoint_sieve() -> Result<(), String> {
    for q in [2, 3, 5, 7] {
        let got = literal_fixpoint_sieve(q).map_err(|e| e.to_string())?;
        let want = combinatorial_sieve(q).map_err(|e| e.to_string())?;
        if got != want {
            return Err(format!("q={q}: {got:?} against {want:?}"));
        }
    }
    Ok(())
}

fn rational_sizes() -> Result<(), String> {
    for (i, m) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        let size = h_forest(i, m).map_err(|e| e.to_string())?.len();
        let count = h_count(i, m).map_err(|e| e.to_string())?;
        if BigUint::from(size) != count {
            return Err(format!("i={i} m={m}: {size} trees, count {count}"));
        }
    }
    Ok(())
}

fn stream_prefix() -> Result<(), String> {
    let mut seen = BTreeSet::new();
    for entry in rational_stream().take_while(|e| e.stage <= 2) {
        let value = entry.value().map_err(|e| e.to_string())?.to_string();
        if !seen.insert(value.clone()) {
            return Err(format!("{value} emitted twice"));
        }
    }
    for p in 1..=16u64 {
        for q in (1..=16u64).filter(|&q| gcd(p, q) == 1) {
            let stage = locate(p, q).map_err(|e| e.to_string())?;
            let text = if q == 1 { p.to_string() } else { format!("{p}/{q}") };
            if (stage <= 2) != seen.contains(&text) {
                return Err(format!("{text} located at stage {stage}"));
            }
        }
    }
    Ok(())
}

fn calkin_wilf() -> Result<(), String> {
    // fusc(n) / fusc(n + 1) is the n-th term, counting from 1
    let mut fusc = vec![0u64, 1];
    for n in 2..=2002usize {
        fusc.push(if n % 2 == 0 { fusc[n / 2] } else { fusc[n / 2] + fusc[n / 2 + 1] });
    }
    for (n, value) in (1..=2000usize).zip(calkin_wilf_stream()) {
        let (a, b) = (fusc[n], fusc[n + 1]);
        let want = if b == 1 { a.to_string() } else { format!("{a}/{b}") };
        if value.to_string() != want {
            return Err(format!("term {n}: {value}, expected {want}"));
        }
    }
    Ok(())
}

fn bounded_towers() -> Result<(), String> {
    let bound = BigUint::from(1_000_000u32);
    let four: Tree = "(r (2 (2 (2 (2)))))".parse().map_err(|e| format!("{e}"))?;
    let five: Tree = "(r (2 (2 (2 (2 (2))))))".parse().map_err(|e| format!("{e}"))?;
    match eval_bounded(&four, &bound).map_err(|e| e.to_string())? {
        BoundedEval::Value(v) if v == BigUint::from(65_536u32) => {}
        other => return Err(format!("height 4 tower: {other:?}")),
    }
    match eval_bounded(&five, &bound).map_err(|e| e.to_string())? {
        BoundedEval::OverBound => Ok(()),
        other => Err(format!("height 5 tower: {other:?}")),
    }
}
