//! Rational trees: forests over a finite set of primes and an unbounded,
//! duplicate-free enumeration of the positive rationals.
//!
//! Over the first `m` primes, each prime `p` contributes one root branch
//! that is absent, `p^e`, or `p^-e` with exponent tree `e` from `G_i`.
//! Stage `s` of the stream covers `m = i = s`; it emits the trees that are
//! new relative to stage `s - 1`, in canonical tree order.

use alloc::boxed::Box;
use core::iter;

use num_bigint::BigUint;
use num_traits::One;

use crate::codec::{encode_rational, eval_factored, EvalValue, FactoredValue};
use crate::error::{Error, Result};
use crate::forest::{graft_forests, raise_forest, Forest};
use crate::generator::{checked_power, g_count, g_forest_with_budget, saturating_pow, TreeClass, DEFAULT_ENUMERATION_BUDGET};
use crate::tree::Tree;

/// Size of `H_i` over `m` primes: `(1 + 2 S)^m` with `S = |G_i|` over `m`
/// labels.
pub fn h_count(i: u32, m: u32) -> Result<BigUint> {
    if m == 0 {
        return Ok(BigUint::one());
    }
    let s = g_count(m, i)?;
    checked_power(s * 2u32 + 1u32, m)
}

pub fn h_forest(i: u32, m: u32) -> Result<Forest> {
    h_forest_with_budget(i, m, DEFAULT_ENUMERATION_BUDGET)
}

/// `H_i` truncated to the first `m` primes: the graft over `k < m` of
/// `R(T_k^-1, G_i) ∪ {root} ∪ R(T_k, G_i)`.
pub fn h_forest_with_budget(i: u32, m: u32, budget: u64) -> Result<Forest> {
    if m == 0 {
        return Ok(Forest::identity());
    }
    let s = (0..i).fold(1u128, |s, _| saturating_pow(s.saturating_add(1), m));
    let total = saturating_pow(s.saturating_mul(2).saturating_add(1), m);
    if total > u128::from(budget) {
        let required = h_count(i, m).unwrap_or_else(|_| BigUint::from(u128::MAX));
        return Err(Error::SizeOverBudget { required, budget });
    }

    let g = g_forest_with_budget(m, i, budget)?;
    let mut acc = Forest::identity();
    for k in 0..m {
        let below = raise_forest(&Tree::label_tree(k, true), &g)?;
        let above = raise_forest(&Tree::label_tree(k, false), &g)?;
        let factor = below.union(&Forest::identity()).union(&above);
        acc = graft_forests(&acc, &factor)?;
    }
    Ok(acc)
}

/// Trees of `H_i` over `m` primes as a lazily enumerated class.
pub fn h_class(i: u32, m: u32) -> TreeClass {
    TreeClass::rational(m, i + 1)
}

/// First stream stage whose forest contains `tree`.
pub fn stage_of(tree: &Tree) -> u32 {
    match tree.max_prime_index() {
        None => 0,
        Some(index) => (index + 1).max(tree.height() - 1),
    }
}

/// Stage at which `num/den` (reduced internally) is emitted.
pub fn locate(num: u64, den: u64) -> Result<u32> {
    Ok(stage_of(&encode_rational(num, den)?))
}

/// One stream item. Values are computed on demand: later stages hold
/// numbers like `2^(2^30)` that have no practical decimal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalEntry {
    pub stage: u32,
    pub tree: Tree,
}

impl RationalEntry {
    pub fn value(&self) -> Result<EvalValue> {
        eval_factored(&self.tree)?.to_value()
    }

    pub fn factored(&self) -> Result<FactoredValue> {
        eval_factored(&self.tree)
    }
}

/// Every positive rational exactly once, stage by stage.
pub struct RationalStream {
    stage: u32,
    emitted: u64,
    pending: Box<dyn Iterator<Item = Tree>>,
}

pub fn rational_stream() -> RationalStream {
    RationalStream { stage: 0, emitted: 0, pending: Box::new(iter::once(Tree::singleton())) }
}

impl RationalStream {
    /// Stage of the most recently emitted entry.
    pub fn stage(&self) -> u32 {
        self.stage
    }

    pub fn emitted(&self) -> u64 {
        self.emitted
    }
}

impl Iterator for RationalStream {
    type Item = RationalEntry;

    fn next(&mut self) -> Option<RationalEntry> {
        loop {
            if let Some(tree) = self.pending.next() {
                self.emitted += 1;
                return Some(RationalEntry { stage: self.stage, tree });
            }
            self.stage += 1;
            let s = self.stage;
            let previous = h_class(s - 1, s - 1);
            self.pending = Box::new(h_class(s, s).iter().filter(move |t| !previous.contains(t)));
        }
    }
}

/// The Calkin–Wilf sequence `1, 1/2, 2, 1/3, 3/2, 2/3, 3, ...` via
/// `x ↦ 1 / (2⌊x⌋ − x + 1)`.
pub fn calkin_wilf_stream() -> CalkinWilf {
    CalkinWilf { next: Some((1, 1)) }
}

pub struct CalkinWilf {
    next: Option<(u64, u64)>,
}

impl Iterator for CalkinWilf {
    type Item = EvalValue;

    fn next(&mut self) -> Option<EvalValue> {
        let (a, b) = self.next?;
        // 1 / (2⌊a/b⌋ − a/b + 1) = b / ((2⌊a/b⌋ + 1) b − a)
        self.next = (2 * (a / b) + 1).checked_mul(b).map(|d| (b, d - a));
        Some(EvalValue::new(BigUint::from(a), BigUint::from(b)).expect("positive terms"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;
    use alloc::string::{String, ToString};
    use alloc::vec::Vec;
    use crate::codec::eval_rational_tree;

    fn values(forest: &Forest) -> Vec<String> {
        forest.iter().map(|t| eval_rational_tree(t).unwrap().to_string()).collect()
    }

    #[test]
    fn one_prime_height_one() {
        let h = h_forest(1, 1).unwrap();
        let got: BTreeSet<String> = values(&h).into_iter().collect();
        let want: BTreeSet<String> = ["1/4", "1/2", "1", "2", "4"].iter().map(|s| s.to_string()).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn height_zero() {
        assert_eq!(h_forest(0, 1).unwrap().len(), 3);
        assert_eq!(h_forest(0, 3).unwrap().len(), 27);
        assert_eq!(h_forest(0, 0).unwrap(), Forest::identity());
        assert_eq!(h_forest(7, 0).unwrap(), Forest::identity());
    }

    #[test]
    fn counts() {
        assert_eq!(h_count(1, 1).unwrap(), BigUint::from(5u8));
        assert_eq!(h_count(0, 2).unwrap(), BigUint::from(9u8));
        assert_eq!(h_count(1, 2).unwrap(), BigUint::from(81u8));
        assert_eq!(h_count(2, 2).unwrap(), BigUint::from(51u32 * 51));
    }

    #[test]
    fn budget() {
        assert!(matches!(h_forest(3, 3), Err(Error::SizeOverBudget { .. })));
        assert!(matches!(h_forest_with_budget(1, 2, 80), Err(Error::SizeOverBudget { .. })));
        assert_eq!(h_forest_with_budget(1, 2, 81).unwrap().len(), 81);
    }

    #[test]
    fn lazy_class_matches_forest() {
        for (i, m) in [(0, 1), (0, 3), (1, 1), (1, 2), (2, 2)] {
            let lazy: Vec<Tree> = h_class(i, m).iter().collect();
            assert_eq!(lazy, h_forest(i, m).unwrap().to_vec(), "i={i} m={m}");
        }
    }

    #[test]
    fn stream_prefix() {
        let first: Vec<String> = rational_stream().take(5).map(|e| e.value().unwrap().to_string()).collect();
        assert_eq!(first, ["1", "2", "1/2", "4", "1/4"]);
        let stages: Vec<u32> = rational_stream().take(6).map(|e| e.stage).collect();
        assert_eq!(stages, [0, 1, 1, 1, 1, 2]);
    }

    #[test]
    fn stream_stages_partition_forests() {
        // stages 0..=2 together are exactly H_2 over two primes
        let upto2: Vec<Tree> = rational_stream().take_while(|e| e.stage <= 2).map(|e| e.tree).collect();
        let mut sorted = upto2.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), upto2.len());
        assert_eq!(Forest::from_iter(upto2), h_forest(2, 2).unwrap());
    }

    #[test]
    fn locating() {
        assert_eq!(locate(1, 1).unwrap(), 0);
        assert_eq!(locate(1, 2).unwrap(), 1);
        assert_eq!(locate(4, 1).unwrap(), 1);
        assert_eq!(locate(3, 5).unwrap(), 3);
        assert_eq!(locate(8, 1).unwrap(), 2);
        assert_eq!(locate(1 << 16, 1).unwrap(), 3);
        let three_fifths = encode_rational(3, 5).unwrap();
        assert!(h_class(3, 3).contains(&three_fifths));
        assert!(!h_class(2, 2).contains(&three_fifths));
    }

    #[test]
    fn calkin_wilf_prefix() {
        let first: Vec<String> = calkin_wilf_stream().take(7).map(|v| v.to_string()).collect();
        assert_eq!(first, ["1", "1/2", "2", "1/3", "3/2", "2/3", "3"]);
        assert_eq!(calkin_wilf_stream().nth(7).unwrap().to_string(), "1/4");
    }
}
