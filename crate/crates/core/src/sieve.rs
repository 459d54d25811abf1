//! Primes in `(q, 2q)` found from the trees of composite numbers.
//!
//! Every composite in `(q, 2q]` factors over primes `≤ q`, so enumerating
//! trees labeled by those primes with value at most `2q` lists the whole
//! composite window. Between two listed composites that differ by 2 sits a
//! prime. `2q` itself closes the window so that a prime at `2q - 1` is seen.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::codec::{eval_bounded, eval_integer_tree, is_prime, BoundedEval};
use crate::error::{Error, Result};
use crate::forest::Forest;
use crate::generator::{g_step, value_bounded_trees, DEFAULT_ENUMERATION_BUDGET};
use crate::primes;
use crate::tree::Tree;

/// Everything one run of the sieve produced for a window.
#[derive(Clone, Debug)]
pub struct SieveRun {
    pub q: u64,
    /// Indices of the primes `≤ q`.
    pub labels: Vec<u32>,
    /// Composites in `(q, 2q]` with their trees, ascending by value.
    pub composites: Vec<(u64, Tree)>,
    /// Primes in `(q, 2q)`, ascending.
    pub primes_found: Vec<u64>,
}

/// Classical sieve of Eratosthenes: all primes `≤ n`.
pub fn eratosthenes(n: u64) -> Vec<u64> {
    let n = n as usize;
    if n < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; n + 1];
    let mut i = 2;
    while i * i <= n {
        if !composite[i] {
            let mut m = i * i;
            while m <= n {
                composite[m] = true;
                m += i;
            }
        }
        i += 1;
    }
    (2..=n).filter(|&k| !composite[k]).map(|k| k as u64).collect()
}

fn labels_up_to(q: u64) -> Result<Vec<u32>> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    let index = primes::prime_index(q).ok_or(Error::LabelOutOfRange(q))?;
    Ok((0..=index).collect())
}

/// Composites `v` with `q < v ≤ 2q`, each with its tree, ascending.
pub fn composites_in_window(q: u64) -> Result<Vec<(u64, Tree)>> {
    let labels = labels_up_to(q)?;
    window_from_labels(q, &labels)
}

fn window_from_labels(q: u64, labels: &[u32]) -> Result<Vec<(u64, Tree)>> {
    let window: Vec<(u64, Tree)> = value_bounded_trees(labels, 2 * q)?.into_iter().filter(|(v, _)| *v > q).collect();
    // the integer/tree bijection makes values unique
    assert!(window.windows(2).all(|w| w[0].0 < w[1].0), "two trees share a value");
    Ok(window)
}

/// Runs the sieve for prime `q`, keeping the composite list.
pub fn sieve_run(q: u64) -> Result<SieveRun> {
    let labels = labels_up_to(q)?;
    let composites = window_from_labels(q, &labels)?;
    let primes_found = if q == 2 {
        // (2, 4] holds the lone composite 4, so there is no pair to scan
        vec![3]
    } else {
        primes_between(composites.iter().map(|(v, _)| *v))
    };
    Ok(SieveRun { q, labels, composites, primes_found })
}

/// The primes in `(q, 2q)` for prime `q`.
pub fn combinatorial_sieve(q: u64) -> Result<Vec<u64>> {
    sieve_run(q).map(|run| run.primes_found)
}

/// Values strictly between ascending neighbours that differ by exactly 2.
fn primes_between(values: impl Iterator<Item = u64>) -> Vec<u64> {
    let values: Vec<u64> = values.collect();
    values.windows(2).filter(|w| w[1] == w[0] + 2).map(|w| w[0] + 1).collect()
}

/// The same sieve driven by the forest recurrence itself: `G_1, G_2, ...`
/// over the primes `≤ q` are built by grafting and raising until a step adds
/// no tree of value `≤ 2q`. Trees above `2q` are dropped after every graft;
/// both operators only increase values, so nothing in range is lost.
pub fn literal_fixpoint_sieve(q: u64) -> Result<Vec<u64>> {
    literal_fixpoint_run(q, DEFAULT_ENUMERATION_BUDGET).map(|run| run.primes_found)
}

/// [`literal_fixpoint_sieve`] keeping the composites it found. Fails with
/// [`Error::SizeOverBudget`] if a pruned forest grows past `budget`.
pub fn literal_fixpoint_run(q: u64, budget: u64) -> Result<SieveRun> {
    let labels = labels_up_to(q)?;
    let n = labels.len() as u32;
    let bound = BigUint::from(2 * q);
    let mut failure = None;
    let mut in_range = |t: &Tree| match eval_bounded(t, &bound) {
        Ok(BoundedEval::Value(_)) => true,
        Ok(BoundedEval::OverBound) => false,
        Err(e) => {
            failure.get_or_insert(e);
            false
        }
    };
    let over_budget = |f: &Forest| {
        (f.len() as u64 > budget).then(|| Error::SizeOverBudget { required: BigUint::from(f.len()), budget })
    };

    let mut old = Forest::empty();
    let mut new = g_step(n, &Forest::identity(), &mut in_range)?;
    while !new.difference(&old).is_empty() {
        if let Some(e) = over_budget(&new) {
            return Err(e);
        }
        old = new;
        new = g_step(n, &old, &mut in_range)?;
    }
    if let Some(e) = failure {
        return Err(e);
    }

    let mut composites = Vec::new();
    for tree in &new {
        let value = eval_integer_tree(tree)?.to_u64().expect("pruned to at most 2q");
        if value > q && value <= 2 * q {
            composites.push((value, tree.clone()));
        }
    }
    // forest order is by shape; the gap scan needs value order
    composites.sort_by_key(|(v, _)| *v);
    composites.dedup_by_key(|(v, _)| *v);
    let primes_found = if q == 2 { vec![3] } else { primes_between(composites.iter().map(|(v, _)| *v)) };
    Ok(SieveRun { q, labels, composites, primes_found })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn window_values(q: u64) -> Vec<u64> {
        composites_in_window(q).unwrap().into_iter().map(|(v, _)| v).collect()
    }

    #[test]
    fn classical_sieve() {
        assert_eq!(eratosthenes(10), [2, 3, 5, 7]);
        assert!(eratosthenes(1).is_empty());
        assert!(eratosthenes(0).is_empty());
        assert_eq!(eratosthenes(2), [2]);
        assert_eq!(eratosthenes(100).len(), 25);
    }

    #[test]
    fn windows() {
        assert_eq!(window_values(5), [6, 8, 9, 10]);
        assert_eq!(window_values(3), [4, 6]);
        assert_eq!(window_values(13), [14, 15, 16, 18, 20, 21, 22, 24, 25, 26]);
        assert_eq!(window_values(2), [4]);
    }

    #[test]
    fn window_trees_evaluate_to_their_values() {
        for (v, t) in composites_in_window(31).unwrap() {
            assert_eq!(crate::codec::eval_integer_tree(&t).unwrap(), BigUint::from(v));
            assert!(t.branches().len() > 1 || t.height() > 1, "{v} is composite");
        }
    }

    #[test]
    fn small_windows() {
        assert_eq!(combinatorial_sieve(2).unwrap(), [3]);
        assert_eq!(combinatorial_sieve(3).unwrap(), [5]);
        assert_eq!(combinatorial_sieve(5).unwrap(), [7]);
        assert_eq!(combinatorial_sieve(7).unwrap(), [11, 13]);
        assert_eq!(combinatorial_sieve(13).unwrap(), [17, 19, 23]);
    }

    #[test]
    fn rejects_non_primes() {
        for q in [0, 1, 4, 9, 15, 100] {
            assert_eq!(combinatorial_sieve(q).unwrap_err(), Error::NotPrime(q));
            assert_eq!(composites_in_window(q).unwrap_err(), Error::NotPrime(q));
            assert_eq!(literal_fixpoint_sieve(q).unwrap_err(), Error::NotPrime(q));
        }
    }

    #[test]
    fn fixpoint_form_agrees() {
        assert_eq!(literal_fixpoint_sieve(2).unwrap(), [3]);
        assert_eq!(literal_fixpoint_sieve(3).unwrap(), [5]);
        assert_eq!(literal_fixpoint_sieve(5).unwrap(), [7]);
        assert_eq!(literal_fixpoint_sieve(13).unwrap(), [17, 19, 23]);
    }

    #[test]
    fn fixpoint_budget() {
        assert!(matches!(literal_fixpoint_run(13, 3), Err(Error::SizeOverBudget { .. })));
    }

    #[test]
    fn fixpoint_composites_match_window() {
        for q in [3, 5, 7, 11] {
            let run = literal_fixpoint_run(q, DEFAULT_ENUMERATION_BUDGET).unwrap();
            assert_eq!(run.composites, composites_in_window(q).unwrap(), "q = {q}");
        }
    }

    #[test]
    fn run_record() {
        let run = sieve_run(7).unwrap();
        assert_eq!(run.labels, [0, 1, 2, 3]);
        assert_eq!(run.composites.iter().map(|(v, _)| *v).collect::<Vec<_>>(), [8, 9, 10, 12, 14]);
        assert_eq!(run.primes_found, [11, 13]);
    }
}
