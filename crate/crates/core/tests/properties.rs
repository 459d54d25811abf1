mod common;

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use primetree::codec::{
    encode_integer, encode_rational, encode_value, eval_bounded, eval_integer_tree, eval_rational_tree, factor,
    BoundedEval,
};
use primetree::forest::{graft_forests, raise_forest};
use primetree::generator::{g_stream_value_bounded, value_bounded_trees};
use primetree::rationals::{calkin_wilf_stream, h_forest};
use primetree::sieve::{eratosthenes, sieve_run};
use primetree::{Forest, Tree};
use proptest::prelude::*;

use common::*;

proptest! {
    #[test]
    fn compare_is_a_total_order(a in rational_tree(4, 3), b in rational_tree(4, 3), c in rational_tree(4, 3)) {
        prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
        prop_assert_eq!(a.cmp(&b) == Ordering::Equal, a.to_string() == b.to_string());
        if a <= b && b <= c {
            prop_assert!(a <= c);
        }
    }

    #[test]
    fn integer_roundtrip(m in 1u64..=10_000_000) {
        let tree = encode_integer(m).unwrap();
        prop_assert_eq!(eval_integer_tree(&tree).unwrap(), BigUint::from(m));
    }

    #[test]
    fn factor_reconstructs(m in 2u64..=1_000_000_000_000) {
        let f = factor(m);
        prop_assert!(f.iter().all(|&(p, _)| naive_is_prime(p)));
        prop_assert!(f.windows(2).all(|w| w[0].0 < w[1].0));
        prop_assert_eq!(f.iter().map(|&(p, e)| p.pow(e)).product::<u64>(), m);
    }

    #[test]
    fn rational_tree_roundtrip(t in rational_tree(4, 1)) {
        let value = eval_rational_tree(&t).unwrap();
        prop_assert!(value.numerator().gcd(value.denominator()).is_one());
        prop_assert_eq!(encode_value(&value).unwrap(), t);
    }

    #[test]
    fn bounded_agrees_with_exact(t in integer_tree(3, 2), bound in 1u64..100_000) {
        let exact = eval_integer_tree(&t).unwrap();
        let bound = BigUint::from(bound);
        let expected = if exact <= bound { BoundedEval::Value(exact) } else { BoundedEval::OverBound };
        prop_assert_eq!(eval_bounded(&t, &bound).unwrap(), expected);
    }

    #[test]
    fn forest_graft_commutes(
        f in prop::collection::vec(disjoint_pair(3, 1), 1..5),
    ) {
        let left: Forest = f.iter().map(|(a, _)| a.clone()).collect();
        let right: Forest = f.iter().map(|(_, b)| b.clone()).collect();
        prop_assert_eq!(graft_forests(&left, &right).unwrap(), graft_forests(&right, &left).unwrap());
    }

    #[test]
    fn raising_preserves_size(t in integer_tree(4, 2), members in prop::collection::vec(integer_tree(4, 2), 0..8)) {
        let f: Forest = members.into_iter().collect();
        let raised = raise_forest(&t, &f).unwrap();
        if t.is_singleton() {
            prop_assert_eq!(raised, Forest::identity());
        } else {
            prop_assert_eq!(raised.len(), f.len());
            prop_assert!(raised.iter().all(|r| r.leaf_count() >= t.leaf_count()));
        }
    }
}

#[test]
fn rational_encoding_reduces() {
    for num in 1..=300u64 {
        for den in 1..=300u64 {
            let g = gcd(num, den);
            let v = eval_rational_tree(&encode_rational(num, den).unwrap()).unwrap();
            assert_eq!(v.numerator().to_u64(), Some(num / g));
            assert_eq!(v.denominator().to_u64(), Some(den / g));
        }
    }
}

#[test]
fn value_bounded_stream_matches_brute_force() {
    let label_sets: [&[u32]; 5] = [&[0], &[0, 1], &[1, 2], &[0, 1, 2, 3], &[0, 2, 4, 5]];
    for labels in label_sets {
        let primes: Vec<u64> = labels.iter().map(|&i| eratosthenes(100)[i as usize]).collect();
        let bound = 10_000;
        let got: Vec<u64> = value_bounded_trees(labels, bound).unwrap().into_iter().map(|(v, _)| v).collect();
        let want: Vec<u64> = (2..=bound).filter(|&m| support_within(m, &primes)).collect();
        assert_eq!(got, want, "labels {labels:?}");
        let streamed: Vec<Tree> = g_stream_value_bounded(labels, bound).unwrap().collect();
        assert_eq!(streamed.len(), want.len());
        assert!(streamed.iter().all(|t| eval_integer_tree(t).unwrap() <= BigUint::from(bound)));
    }
}

#[test]
fn sieve_run_invariants() {
    for q in (2..=101u64).filter(|&q| naive_is_prime(q)) {
        let run = sieve_run(q).unwrap();
        assert!(!run.primes_found.is_empty(), "no prime in ({q}, {})", 2 * q);
        assert!(run.primes_found.iter().all(|&p| p > q && p < 2 * q && naive_is_prime(p)));
        let max_label = run.labels.iter().max().copied().unwrap();
        for (v, tree) in &run.composites {
            assert!(*v > q && *v <= 2 * q && !naive_is_prime(*v));
            assert!(tree.max_prime_index().unwrap() <= max_label);
        }
        let every_composite: Vec<u64> = (q + 1..=2 * q).filter(|&v| !naive_is_prime(v)).collect();
        assert_eq!(run.composites.iter().map(|(v, _)| *v).collect::<Vec<_>>(), every_composite);
    }
}

#[test]
fn rational_forests_nest() {
    let params = [(0, 1), (0, 2), (1, 1), (1, 2), (0, 3)];
    for (i, m) in params {
        let base = h_forest(i, m).unwrap();
        assert!(base.is_subset(&h_forest(i, m + 1).unwrap()));
        let taller = h_forest(i + 1, m).unwrap();
        assert!(base.is_subset(&taller) && base.len() < taller.len(), "i={i} m={m}");
    }
}

#[test]
fn integer_slice_of_rational_forest() {
    let h = h_forest(1, 2).unwrap();
    let integers: Vec<&Tree> = h.iter().filter(|t| !t.has_inverse()).collect();
    assert_eq!(integers.len(), 25);
    for t in integers {
        let as_rational = eval_rational_tree(t).unwrap();
        assert!(as_rational.is_integer());
        assert_eq!(&eval_integer_tree(t).unwrap(), as_rational.numerator());
    }
}

#[test]
fn calkin_wilf_prefix_is_distinct_and_reduced() {
    let prefix: Vec<_> = calkin_wilf_stream().take(10_000).collect();
    let pairs: Vec<(u64, u64)> =
        prefix.iter().map(|v| (v.numerator().to_u64().unwrap(), v.denominator().to_u64().unwrap())).collect();
    assert_eq!(pairs, calkin_wilf_bfs(10_000));
    assert!(pairs.iter().all(|&(a, b)| gcd(a, b) == 1));
    assert_eq!(pairs.iter().collect::<HashSet<_>>().len(), 10_000);
}

#[test]
fn multiplicativity_exhaustive_small() {
    let trees: BTreeSet<Tree> = (1..=200u64).map(|m| encode_integer(m).unwrap()).collect();
    for a in &trees {
        for b in &trees {
            if let Ok(g) = a.graft(b) {
                let product = eval_integer_tree(a).unwrap() * eval_integer_tree(b).unwrap();
                assert_eq!(eval_integer_tree(&g).unwrap(), product);
            }
        }
    }
}
