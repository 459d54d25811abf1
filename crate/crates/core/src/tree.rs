//! Canonical prime-labeled rooted trees.
//!
//! A [`Tree`] is the list of `(Label, Tree)` branches hanging from an
//! unlabeled root; the branchless tree is the single vertex. Branches are
//! kept sorted by label and sibling labels are distinct, so structural
//! equality coincides with equality of the encoded number.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::primes;

/// A vertex label: the `prime_index`-th prime, or its inverse.
///
/// Ordering puts every plain label before every inverted one, then orders by
/// index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label {
    inverted: bool,
    prime_index: u32,
}

impl Label {
    pub const fn prime(prime_index: u32) -> Label {
        Label { inverted: false, prime_index }
    }

    pub const fn inverse(prime_index: u32) -> Label {
        Label { inverted: true, prime_index }
    }

    pub const fn new(prime_index: u32, inverted: bool) -> Label {
        Label { inverted, prime_index }
    }

    /// Label for the prime `p` given by value.
    pub fn from_prime(p: u64, inverted: bool) -> Result<Label> {
        match primes::prime_index(p) {
            Some(i) => Ok(Label::new(i, inverted)),
            None if p > primes::PRIME_CEILING => Err(Error::LabelOutOfRange(p)),
            None => Err(Error::NotPrime(p)),
        }
    }

    pub const fn prime_index(self) -> u32 {
        self.prime_index
    }

    pub const fn is_inverted(self) -> bool {
        self.inverted
    }

    pub fn prime_value(self) -> Result<u64> {
        primes::nth_prime(self.prime_index).ok_or(Error::LabelOutOfRange(u64::from(self.prime_index)))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverted {
            f.write_str("1/")?;
        }
        match primes::nth_prime(self.prime_index) {
            Some(p) => write!(f, "{p}"),
            None => write!(f, "p#{}", self.prime_index),
        }
    }
}

/// Unvalidated tree data, e.g. straight out of a parser. Turn it into a
/// [`Tree`] with [`Tree::validate`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawTree {
    pub children: Vec<(Label, RawTree)>,
}

impl RawTree {
    pub fn leaf() -> RawTree {
        RawTree::default()
    }

    pub fn with(children: Vec<(Label, RawTree)>) -> RawTree {
        RawTree { children }
    }
}

/// Canonical, immutable prime-labeled rooted tree. Cloning is cheap; subtrees
/// are shared.
#[derive(Clone)]
pub struct Tree(Arc<Node>);

struct Node {
    branches: Vec<(Label, Tree)>,
    height: u32,
    inverse_at_root: bool,
}

impl Tree {
    /// The single-vertex tree. Identity for grafting; evaluates to 1.
    pub fn singleton() -> Tree {
        Tree::from_canonical(Vec::new())
    }

    /// Root with one child labeled `p_k` (or `1/p_k`).
    pub fn label_tree(prime_index: u32, inverted: bool) -> Tree {
        Tree::from_canonical(alloc::vec![(Label::new(prime_index, inverted), Tree::singleton())])
    }

    /// Builds a tree from root branches in any order.
    pub fn from_branches<I>(branches: I) -> Result<Tree>
    where
        I: IntoIterator<Item = (Label, Tree)>,
    {
        let mut branches: Vec<(Label, Tree)> = branches.into_iter().collect();
        branches.sort_by_key(|(label, _)| *label);
        check_root_branches(&branches, &[])?;
        Ok(Tree::from_canonical(branches))
    }

    /// Checks sibling distinctness and inverse placement throughout `raw` and
    /// returns its canonical form.
    pub fn validate(raw: &RawTree) -> Result<Tree> {
        let mut path = Vec::new();
        validate_at(raw, &mut path)
    }

    /// Caller guarantees sorted, distinct labels and valid subtrees.
    pub(crate) fn from_canonical(branches: Vec<(Label, Tree)>) -> Tree {
        debug_assert!(branches.windows(2).all(|w| w[0].0 < w[1].0));
        let height = branches.iter().map(|(_, t)| t.height() + 1).max().unwrap_or(0);
        let inverse_at_root = branches.iter().any(|(l, _)| l.is_inverted());
        Tree(Arc::new(Node { branches, height, inverse_at_root }))
    }

    pub fn branches(&self) -> &[(Label, Tree)] {
        &self.0.branches
    }

    pub fn is_singleton(&self) -> bool {
        self.0.branches.is_empty()
    }

    /// Longest root-to-leaf path, in edges.
    pub fn height(&self) -> u32 {
        self.0.height
    }

    /// Number of branchless vertices; the singleton's root is its own leaf.
    pub fn leaf_count(&self) -> u64 {
        if self.is_singleton() {
            return 1;
        }
        self.branches().iter().map(|(_, t)| t.leaf_count()).sum()
    }

    pub fn vertex_count(&self) -> u64 {
        1 + self.branches().iter().map(|(_, t)| t.vertex_count()).sum::<u64>()
    }

    /// Whether any child of the root carries an inverted label. Inverted
    /// labels cannot occur deeper.
    pub fn has_inverse(&self) -> bool {
        self.0.inverse_at_root
    }

    /// Largest prime index on any vertex.
    pub fn max_prime_index(&self) -> Option<u32> {
        self.branches()
            .iter()
            .map(|(l, t)| t.max_prime_index().map_or(l.prime_index(), |m| m.max(l.prime_index())))
            .max()
    }

    /// Grafts `self` and `other` at their roots: the result's branches are the
    /// union of both branch sets.
    pub fn graft(&self, other: &Tree) -> Result<Tree> {
        if other.is_singleton() {
            return Ok(self.clone());
        }
        if self.is_singleton() {
            return Ok(other.clone());
        }
        let (a, b) = (self.branches(), other.branches());
        let mut merged = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    merged.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    merged.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    return Err(Error::SiblingCollision { path: Vec::new(), label: a[i].0 });
                }
            }
        }
        merged.extend_from_slice(&a[i..]);
        merged.extend_from_slice(&b[j..]);
        check_opposed(&merged)?;
        Ok(Tree::from_canonical(merged))
    }

    /// `self` with a copy of `member`'s branches attached beneath each of its
    /// leaves. A singleton `self` stays the singleton; a singleton `member`
    /// leaves `self` unchanged.
    pub fn raise(&self, member: &Tree) -> Result<Tree> {
        if self.is_singleton() || member.is_singleton() {
            return Ok(self.clone());
        }
        if member.has_inverse() {
            let label = member.branches().iter().map(|(l, _)| *l).find(|l| l.is_inverted());
            return Err(Error::MisplacedInverse {
                path: alloc::vec![self.branches()[0].0],
                label: label.expect("inverse_at_root implies an inverted branch"),
            });
        }
        Ok(self.attach_below_leaves(member))
    }

    fn attach_below_leaves(&self, member: &Tree) -> Tree {
        let branches = self
            .branches()
            .iter()
            .map(|(label, sub)| {
                let sub = if sub.is_singleton() { member.clone() } else { sub.attach_below_leaves(member) };
                (*label, sub)
            })
            .collect();
        Tree::from_canonical(branches)
    }

    pub fn to_raw(&self) -> RawTree {
        RawTree { children: self.branches().iter().map(|(l, t)| (*l, t.to_raw())).collect() }
    }
}

fn validate_at(raw: &RawTree, path: &mut Vec<Label>) -> Result<Tree> {
    let mut branches = Vec::with_capacity(raw.children.len());
    for (label, child) in &raw.children {
        if label.is_inverted() && !path.is_empty() {
            return Err(Error::MisplacedInverse { path: path.clone(), label: *label });
        }
        path.push(*label);
        let sub = validate_at(child, path)?;
        path.pop();
        branches.push((*label, sub));
    }
    branches.sort_by_key(|(label, _)| *label);
    check_root_branches(&branches, path)?;
    Ok(Tree::from_canonical(branches))
}

/// Sorted branches: distinct labels, no inverse in any subtree, no `p` next
/// to `1/p`.
fn check_root_branches(branches: &[(Label, Tree)], path: &[Label]) -> Result<()> {
    for w in branches.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(Error::SiblingCollision { path: path.to_vec(), label: w[0].0 });
        }
    }
    for (label, sub) in branches {
        if label.is_inverted() && !path.is_empty() {
            return Err(Error::MisplacedInverse { path: path.to_vec(), label: *label });
        }
        if let Some((bad, _)) = sub.branches().iter().find(|(l, _)| l.is_inverted()) {
            let mut at = path.to_vec();
            at.push(*label);
            return Err(Error::MisplacedInverse { path: at, label: *bad });
        }
    }
    check_opposed(branches)
}

fn check_opposed(branches: &[(Label, Tree)]) -> Result<()> {
    // plain labels sort first, so each side is sorted by index
    let split = branches.partition_point(|(l, _)| !l.is_inverted());
    let (plain, inverted) = branches.split_at(split);
    let (mut i, mut j) = (0, 0);
    while i < plain.len() && j < inverted.len() {
        let (a, b) = (plain[i].0.prime_index(), inverted[j].0.prime_index());
        match a.cmp(&b) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => return Err(Error::OpposedLabels { prime_index: a }),
        }
    }
    Ok(())
}

/// Total order: height, then branch count, then the branch sequences
/// lexicographically (label first, then subtree).
impl Ord for Tree {
    fn cmp(&self, other: &Tree) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.height()
            .cmp(&other.height())
            .then_with(|| self.branches().len().cmp(&other.branches().len()))
            .then_with(|| {
                for ((la, ta), (lb, tb)) in self.branches().iter().zip(other.branches()) {
                    let ord = la.cmp(lb).then_with(|| ta.cmp(tb));
                    if ord != Ordering::Equal {
                        return ord;
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Tree {
    fn partial_cmp(&self, other: &Tree) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Tree {
    fn eq(&self, other: &Tree) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Tree {}

impl Hash for Tree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_usize(self.branches().len());
        for (label, sub) in self.branches() {
            label.hash(state);
            sub.hash(state);
        }
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
