//! Prime-by-index lookup backed by a shared, lazily extended table.
//!
//! Labels store prime indices (`0 ↦ 2`, `1 ↦ 3`, ...). The table grows by
//! segmented sieving on demand and is shared by all callers behind a
//! reader/writer lock.

use alloc::vec;
use alloc::vec::Vec;

use spin::RwLock;

/// Largest value the table will ever sieve up to. Primes above this cannot
/// be used as labels.
pub const PRIME_CEILING: u64 = 1 << 28;

const INITIAL_LIMIT: u64 = 1 << 12;

static TABLE: RwLock<Vec<u32>> = RwLock::new(Vec::new());

/// The `index`-th prime, counting from `0 ↦ 2`. `None` when the prime lies
/// above [`PRIME_CEILING`].
pub fn nth_prime(index: u32) -> Option<u64> {
    let i = index as usize;
    if let Some(&p) = TABLE.read().get(i) {
        return Some(u64::from(p));
    }
    let mut table = TABLE.write();
    while table.len() <= i {
        if !extend(&mut table) {
            return None;
        }
    }
    Some(u64::from(table[i]))
}

/// Index of the prime `p`, or `None` if `p` is not prime or lies above
/// [`PRIME_CEILING`].
pub fn prime_index(p: u64) -> Option<u32> {
    if !(2..=PRIME_CEILING).contains(&p) {
        return None;
    }
    {
        let table = TABLE.read();
        if table.last().is_some_and(|&last| u64::from(last) >= p) {
            return lookup(&table, p);
        }
    }
    let mut table = TABLE.write();
    while table.last().is_none_or(|&last| u64::from(last) < p) {
        if !extend(&mut table) {
            return None;
        }
    }
    lookup(&table, p)
}

/// Number of primes `≤ x`, for `x ≤ PRIME_CEILING`.
pub fn prime_count(x: u64) -> Option<u32> {
    if x < 2 {
        return Some(0);
    }
    if x > PRIME_CEILING {
        return None;
    }
    // every prime ≤ x is in the table once the table reaches past x
    let mut table = TABLE.write();
    while table.last().is_none_or(|&last| u64::from(last) < x) {
        if !extend(&mut table) {
            break;
        }
    }
    Some(table.partition_point(|&p| u64::from(p) <= x) as u32)
}

fn lookup(table: &[u32], p: u64) -> Option<u32> {
    table
        .binary_search(&(p as u32))
        .ok()
        .map(|i| i as u32)
}

/// Sieve the next segment onto the table. Returns `false` once the ceiling
/// has been reached.
fn extend(table: &mut Vec<u32>) -> bool {
    let Some(&last) = table.last() else {
        table.extend(small_sieve(INITIAL_LIMIT));
        return true;
    };
    let lo = u64::from(last) + 1;
    if lo > PRIME_CEILING {
        return false;
    }
    // primes up to `last` cover every factor below sqrt(2 * last)
    let hi = (2 * u64::from(last)).min(PRIME_CEILING);
    let mut composite = vec![false; (hi - lo + 1) as usize];
    for &p in table.iter() {
        let p = u64::from(p);
        if p * p > hi {
            break;
        }
        let mut m = (lo.div_ceil(p) * p).max(p * p);
        while m <= hi {
            composite[(m - lo) as usize] = true;
            m += p;
        }
    }
    table.extend(
        composite
            .iter()
            .enumerate()
            .filter(|(_, &c)| !c)
            .map(|(off, _)| (lo + off as u64) as u32),
    );
    true
}

fn small_sieve(limit: u64) -> impl Iterator<Item = u32> {
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut i = 2;
    while i * i <= n {
        if !composite[i] {
            for m in (i * i..=n).step_by(i) {
                composite[m] = true;
            }
        }
        i += 1;
    }
    (2..=n).filter(move |&k| !composite[k]).map(|k| k as u32)
}
