//! Forests of all validly labeled trees of bounded height, their sizes, and
//! lazy enumerations used by the sieve and the rational stream.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::iter;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::forest::{graft_forests, raise_forest, Forest};
use crate::tree::{Label, Tree};

/// Exact counts larger than this many bits are refused with
/// [`Error::ValueTooLarge`].
pub const MAX_COUNT_BITS: u64 = 1 << 20;

/// Largest forest [`g_forest`] will materialize.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 10_000_000;

/// Parameters of a generation run: `n_labels` labels (the first `n` primes),
/// heights up to `max_height`, optionally only trees evaluating to at most
/// `value_bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSpec {
    pub n_labels: u32,
    pub max_height: u32,
    pub value_bound: Option<BigUint>,
}

impl GenSpec {
    pub fn new(n_labels: u32, max_height: u32) -> GenSpec {
        GenSpec { n_labels, max_height, value_bound: None }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_labels == 0 {
            return Err(Error::InvalidParameter("label count must be at least 1"));
        }
        if self.value_bound.as_ref().is_some_and(|b| *b < BigUint::from(2u8)) {
            return Err(Error::InvalidParameter("value bound must be at least 2"));
        }
        Ok(())
    }
}

/// `S_h` with `S_0 = 1`, `S_i = (1 + S_{i-1})^n`: the number of validly
/// labeled trees over `n` labels with height at most `h`.
pub fn g_count(n: u32, h: u32) -> Result<BigUint> {
    let mut s = BigUint::one();
    for _ in 0..h {
        s = checked_power(s + 1u32, n)?;
    }
    Ok(s)
}

pub(crate) fn checked_power(base: BigUint, exponent: u32) -> Result<BigUint> {
    if base.bits().saturating_mul(u64::from(exponent)) > MAX_COUNT_BITS {
        return Err(Error::ValueTooLarge);
    }
    Ok(num_traits::pow(base, exponent as usize))
}

pub(crate) fn saturating_pow(base: u128, exponent: u32) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exponent {
        acc = acc.saturating_mul(base);
        if acc == u128::MAX {
            break;
        }
    }
    acc
}

/// `G_h` over labels `0..n`, built by the grafting/raising recurrence, with
/// the default budget.
pub fn g_forest(n: u32, h: u32) -> Result<Forest> {
    g_forest_with_budget(n, h, DEFAULT_ENUMERATION_BUDGET)
}

pub fn g_forest_with_budget(n: u32, h: u32, budget: u64) -> Result<Forest> {
    GenSpec::new(n, h).validate()?;
    let size = (0..h).fold(1u128, |s, _| saturating_pow(s.saturating_add(1), n));
    if size > u128::from(budget) {
        let required = g_count(n, h).unwrap_or_else(|_| BigUint::from(u128::MAX));
        return Err(Error::SizeOverBudget { required, budget });
    }
    let mut forest = Forest::identity();
    for _ in 0..h {
        forest = g_step(n, &forest, |_| true)?;
    }
    Ok(forest)
}

/// One step of the recurrence: the graft over `k < n` of
/// `{root} ∪ R(T_k, previous)`. Trees failing `keep` are dropped after every
/// graft, which lets callers prune by value.
pub fn g_step(n: u32, previous: &Forest, mut keep: impl FnMut(&Tree) -> bool) -> Result<Forest> {
    let mut acc = Forest::identity();
    for k in 0..n {
        let raised = raise_forest(&Tree::label_tree(k, false), previous)?;
        let factor = Forest::identity().union(&raised).filter(&mut keep);
        acc = graft_forests(&acc, &factor)?.filter(&mut keep);
    }
    Ok(acc)
}

/// Largest number of non-root vertices [`all_valid_trees_bruteforce`] will
/// take subsets of.
pub const BRUTEFORCE_MAX_VERTICES: usize = 24;

/// Every rooted subtree of the complete `n`-ary tree of height `h`, found by
/// testing each vertex subset for closure under the parent map. The `k`-th
/// child position carries label `k`. Independent of the grafting recurrence.
pub fn all_valid_trees_bruteforce(n: u32, h: u32) -> Result<Forest> {
    GenSpec::new(n, h).validate()?;
    let mut parent: Vec<Option<usize>> = Vec::new();
    let mut position: Vec<u32> = Vec::new();
    let mut stack: Vec<(Option<usize>, u32)> = vec![(None, 0)];
    while let Some((at, depth)) = stack.pop() {
        if depth == h {
            continue;
        }
        for k in 0..n {
            let id = parent.len();
            if id >= BRUTEFORCE_MAX_VERTICES {
                let required = (1..=h).fold(BigUint::ZERO, |acc, d| acc + num_traits::pow(BigUint::from(n), d as usize));
                return Err(Error::SizeOverBudget { required, budget: BRUTEFORCE_MAX_VERTICES as u64 });
            }
            parent.push(at);
            position.push(k);
            stack.push((Some(id), depth + 1));
        }
    }
    let vertices = parent.len();
    let mut forest = Vec::new();
    for mask in 0u32..(1u32 << vertices) {
        let present = |v: usize| mask & (1 << v) != 0;
        let closed = (0..vertices).filter(|&v| present(v)).all(|v| parent[v].is_none_or(present));
        if !closed {
            continue;
        }
        forest.push(build_subset(None, &parent, &position, &present)?);
    }
    Ok(forest.into_iter().collect())
}

fn build_subset(at: Option<usize>, parent: &[Option<usize>], position: &[u32], present: &impl Fn(usize) -> bool) -> Result<Tree> {
    let mut branches = Vec::new();
    for v in 0..parent.len() {
        if parent[v] == at && present(v) {
            branches.push((Label::prime(position[v]), build_subset(Some(v), parent, position, present)?));
        }
    }
    Tree::from_branches(branches)
}

/// All non-singleton trees whose labels come from `prime_indices` and whose
/// value is at most `bound`, in canonical order.
///
/// Adding a branch or growing an exponent at least doubles the value, so the
/// search only descends while the running product still fits.
pub fn g_stream_value_bounded(prime_indices: &[u32], bound: u64) -> Result<impl Iterator<Item = Tree>> {
    let mut gen = BoundedTrees::new(prime_indices)?;
    let mut trees: Vec<Tree> = gen.up_to(bound).iter().map(|(_, t)| t.clone()).filter(|t| !t.is_singleton()).collect();
    trees.sort();
    Ok(trees.into_iter())
}

/// Same trees as [`g_stream_value_bounded`] paired with their values,
/// ascending by value.
pub fn value_bounded_trees(prime_indices: &[u32], bound: u64) -> Result<Vec<(u64, Tree)>> {
    let mut gen = BoundedTrees::new(prime_indices)?;
    let mut trees: Vec<(u64, Tree)> = gen.up_to(bound).iter().filter(|(_, t)| !t.is_singleton()).cloned().collect();
    trees.sort_by_key(|(v, _)| *v);
    Ok(trees)
}

struct BoundedTrees {
    labels: Vec<(Label, u64)>,
    memo: BTreeMap<u64, Vec<(u64, Tree)>>,
}

impl BoundedTrees {
    fn new(prime_indices: &[u32]) -> Result<BoundedTrees> {
        let mut indices = prime_indices.to_vec();
        indices.sort_unstable();
        indices.dedup();
        let labels = indices
            .into_iter()
            .map(|i| {
                let label = Label::prime(i);
                label.prime_value().map(|p| (label, p))
            })
            .collect::<Result<_>>()?;
        Ok(BoundedTrees { labels, memo: BTreeMap::new() })
    }

    /// Every tree (singleton included) with value ≤ bound.
    fn up_to(&mut self, bound: u64) -> &Vec<(u64, Tree)> {
        if !self.memo.contains_key(&bound) {
            let mut out = Vec::new();
            if bound >= 1 {
                let mut branches = Vec::new();
                self.extend(0, 1, bound, &mut branches, &mut out);
            }
            self.memo.insert(bound, out);
        }
        &self.memo[&bound]
    }

    fn extend(&mut self, j: usize, acc: u64, bound: u64, branches: &mut Vec<(Label, Tree)>, out: &mut Vec<(u64, Tree)>) {
        if j == self.labels.len() {
            out.push((acc, Tree::from_canonical(branches.clone())));
            return;
        }
        self.extend(j + 1, acc, bound, branches, out);
        let (label, p) = self.labels[j];
        let remaining = bound / acc;
        if p > remaining {
            return;
        }
        let mut exponent_cap = 0;
        let mut power = 1u64;
        while let Some(next) = power.checked_mul(p).filter(|&x| x <= remaining) {
            power = next;
            exponent_cap += 1;
        }
        let exponents = self.up_to(exponent_cap).clone();
        for (e, sub) in exponents {
            let factor = p.pow(e as u32);
            branches.push((label, sub));
            self.extend(j + 1, acc * factor, bound, branches, out);
            branches.pop();
        }
    }
}

/// A family of trees closed under the recurrences: labels from the first
/// `labels` primes, height at most `max_height`, and (when `signed`) inverted
/// labels allowed on the children of the root.
///
/// The unsigned family with `(n, h)` is `G_h` over `n` labels; the signed
/// family with `(m, i + 1)` is the rational forest `H_i` over `m` primes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TreeClass {
    pub labels: u32,
    pub max_height: u32,
    pub signed: bool,
}

type TreeIter = Box<dyn Iterator<Item = Tree>>;
type BranchIter = Box<dyn Iterator<Item = Vec<(Label, Tree)>>>;

impl TreeClass {
    pub fn integer(labels: u32, max_height: u32) -> TreeClass {
        TreeClass { labels, max_height, signed: false }
    }

    pub fn rational(labels: u32, max_height: u32) -> TreeClass {
        TreeClass { labels, max_height, signed: true }
    }

    pub fn contains(&self, tree: &Tree) -> bool {
        tree.height() <= self.max_height
            && tree.max_prime_index().is_none_or(|i| i < self.labels)
            && (self.signed || !tree.has_inverse())
    }

    /// Members in canonical tree order, generated lazily.
    pub fn iter(self) -> impl Iterator<Item = Tree> {
        (0..=self.max_height).flat_map(move |h| self.of_height(h))
    }

    fn exponents(self, max_height: u32) -> TreeClass {
        TreeClass { labels: self.labels, max_height, signed: false }
    }

    fn slots(self) -> u32 {
        if self.signed {
            2 * self.labels
        } else {
            self.labels
        }
    }

    fn slot_label(self, slot: u32) -> Label {
        if slot < self.labels {
            Label::prime(slot)
        } else {
            Label::inverse(slot - self.labels)
        }
    }

    fn of_height(self, h: u32) -> TreeIter {
        if h == 0 {
            return Box::new(iter::once(Tree::singleton()));
        }
        if h > self.max_height {
            return Box::new(iter::empty());
        }
        Box::new((1..=self.labels).flat_map(move |b| self.sequences(h, b, 0, Vec::new(), true).map(Tree::from_canonical)))
    }

    /// Branch lists of length `prefix.len() + count` extending `prefix`, in
    /// lexicographic order, for trees of height exactly `h`. `need_exact`
    /// records that no branch so far reaches height `h - 1` below the root.
    fn sequences(self, h: u32, count: u32, start: u32, prefix: Vec<(Label, Tree)>, need_exact: bool) -> BranchIter {
        if count == 0 {
            return if need_exact { Box::new(iter::empty()) } else { Box::new(iter::once(prefix)) };
        }
        Box::new((start..self.slots()).flat_map(move |slot| -> BranchIter {
            let label = self.slot_label(slot);
            let index = label.prime_index();
            if prefix.iter().any(|(l, _)| l.prime_index() == index) {
                return Box::new(iter::empty());
            }
            let available = (0..self.labels)
                .filter(|&j| j != index && !prefix.iter().any(|(l, _)| l.prime_index() == j))
                .filter(|&j| if slot < self.labels { self.signed || j > index } else { j > index })
                .count() as u32;
            if available < count - 1 {
                return Box::new(iter::empty());
            }
            let subs: TreeIter = if count == 1 && need_exact {
                self.exponents(h - 1).of_height(h - 1)
            } else {
                Box::new(self.exponents(h - 1).iter())
            };
            let prefix = prefix.clone();
            Box::new(subs.flat_map(move |sub| {
                let still_needed = need_exact && sub.height() + 1 != h;
                let mut next = prefix.clone();
                next.push((label, sub));
                self.sequences(h, count - 1, slot + 1, next, still_needed)
            }))
        }))
    }
}
