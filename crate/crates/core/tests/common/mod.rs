//! Shared generators and independent oracles for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use primetree::{Label, Tree};
use proptest::prelude::*;

/// Random valid integer tree over the first `labels` primes.
pub fn integer_tree(labels: u32, depth: u32) -> BoxedStrategy<Tree> {
    let leaf = Just(Tree::singleton()).boxed();
    leaf.prop_recursive(depth, 24, labels, move |inner| {
        prop::collection::vec((0..labels, inner), 0..=labels as usize)
            .prop_map(|branches| {
                let unique: BTreeMap<u32, Tree> = branches.into_iter().collect();
                Tree::from_branches(unique.into_iter().map(|(i, t)| (Label::prime(i), t))).unwrap()
            })
            .boxed()
    })
    .boxed()
}

/// Random valid rational tree: each of the first `labels` primes is absent,
/// plain, or inverted at the root, with integer exponent trees.
pub fn rational_tree(labels: u32, depth: u32) -> BoxedStrategy<Tree> {
    prop::collection::vec(prop::option::of((any::<bool>(), integer_tree(labels, depth))), labels as usize)
        .prop_map(|slots| {
            let branches = slots
                .into_iter()
                .enumerate()
                .filter_map(|(i, slot)| slot.map(|(inv, t)| (Label::new(i as u32, inv), t)));
            Tree::from_branches(branches).unwrap()
        })
        .boxed()
}

/// Two integer trees whose root labels are disjoint: labels of the first
/// come from even indices, the second from odd ones.
pub fn disjoint_pair(labels: u32, depth: u32) -> BoxedStrategy<(Tree, Tree)> {
    let side = move |parity: u32| {
        prop::collection::btree_map(0..labels, integer_tree(labels, depth), 0..=labels as usize)
            .prop_map(move |m| {
                Tree::from_branches(m.into_iter().map(|(i, t)| (Label::prime(2 * i + parity), t))).unwrap()
            })
    };
    (side(0), side(1)).boxed()
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Prime factors by naive division, for test-side checks.
pub fn naive_factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn naive_is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Whether every prime in `n`'s factorization, and recursively in every
/// exponent, is in `allowed`.
pub fn support_within(n: u64, allowed: &[u64]) -> bool {
    naive_factor(n).into_iter().all(|(p, e)| allowed.contains(&p) && support_within(u64::from(e), allowed))
}

/// Index (from 0) of prime `p` by counting primes below it.
fn naive_prime_index(p: u64) -> u32 {
    (2..p).filter(|&k| naive_is_prime(k)).count() as u32
}

/// Largest prime index used anywhere in the recursive factorization of `n`,
/// and the height of `n`'s exponent tower (0 for 1).
fn tower_shape(n: u64) -> (Option<u32>, u32) {
    let mut max_index = None;
    let mut height = 0;
    for (p, e) in naive_factor(n) {
        let (sub_index, sub_height) = tower_shape(u64::from(e));
        let idx = naive_prime_index(p).max(sub_index.unwrap_or(0));
        max_index = Some(max_index.map_or(idx, |m: u32| m.max(idx)));
        height = height.max(sub_height + 1);
    }
    (max_index, height)
}

/// First stream stage that can hold `num/den` (reduced): enough primes for
/// every label and enough height for every exponent.
pub fn needed_stage(num: u64, den: u64) -> u32 {
    let g = gcd(num, den);
    let (a, b) = tower_shape(num / g);
    let (c, d) = tower_shape(den / g);
    let primes_needed = a.max(c).map_or(0, |i| i + 1);
    let height = a.map(|_| b).unwrap_or(0).max(c.map(|_| d).unwrap_or(0));
    primes_needed.max(height.saturating_sub(1))
}

/// Calkin–Wilf tree read breadth first: the children of `a/b` are
/// `a/(a+b)` and `(a+b)/b`.
pub fn calkin_wilf_bfs(count: usize) -> Vec<(u64, u64)> {
    let mut out = vec![(1u64, 1u64)];
    let mut head = 0;
    while out.len() < count {
        let (a, b) = out[head];
        head += 1;
        out.push((a, a + b));
        out.push((a + b, b));
    }
    out.truncate(count);
    out
}

/// Walks `a/b` up the Calkin–Wilf tree to `1/1` with Euclid-style jumps.
/// Reaching the root proves membership; returns the depth.
pub fn calkin_wilf_depth(mut a: u128, mut b: u128) -> Option<u128> {
    if a == 0 || b == 0 {
        return None;
    }
    let mut depth = 0;
    while (a, b) != (1, 1) {
        if a == b {
            // not in lowest terms
            return None;
        }
        if a > b {
            let k = if b == 1 { a - 1 } else { a / b };
            a -= k * b;
            depth += k;
        } else {
            let k = if a == 1 { b - 1 } else { b / a };
            b -= k * a;
            depth += k;
        }
    }
    Some(depth)
}
