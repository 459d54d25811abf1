//! Duplicate-free forests and the grafting and raising operators on them.

use alloc::collections::btree_set::{self, BTreeSet};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::tree::Tree;

/// A set of trees, iterated in canonical tree order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Forest {
    trees: BTreeSet<Tree>,
}

impl Forest {
    pub fn empty() -> Forest {
        Forest::default()
    }

    /// `{root}`, the identity for [`graft_forests`].
    pub fn identity() -> Forest {
        Forest::from_iter([Tree::singleton()])
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn iter(&self) -> btree_set::Iter<'_, Tree> {
        self.trees.iter()
    }

    pub fn contains(&self, tree: &Tree) -> bool {
        self.trees.contains(tree)
    }

    pub fn union(&self, other: &Forest) -> Forest {
        Forest { trees: self.trees.union(&other.trees).cloned().collect() }
    }

    pub fn difference(&self, other: &Forest) -> Forest {
        Forest { trees: self.trees.difference(&other.trees).cloned().collect() }
    }

    pub fn is_subset(&self, other: &Forest) -> bool {
        self.trees.is_subset(&other.trees)
    }

    /// Members satisfying `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Tree) -> bool) -> Forest {
        Forest { trees: self.trees.iter().filter(|t| keep(t)).cloned().collect() }
    }

    pub fn to_vec(&self) -> Vec<Tree> {
        self.trees.iter().cloned().collect()
    }
}

impl FromIterator<Tree> for Forest {
    fn from_iter<I: IntoIterator<Item = Tree>>(iter: I) -> Forest {
        Forest { trees: iter.into_iter().collect() }
    }
}

impl IntoIterator for Forest {
    type Item = Tree;
    type IntoIter = btree_set::IntoIter<Tree>;

    fn into_iter(self) -> Self::IntoIter {
        self.trees.into_iter()
    }
}

impl<'a> IntoIterator for &'a Forest {
    type Item = &'a Tree;
    type IntoIter = btree_set::Iter<'a, Tree>;

    fn into_iter(self) -> Self::IntoIter {
        self.trees.iter()
    }
}

/// All pairwise grafts `a ∧ b` for `a ∈ f`, `b ∈ g`, deduplicated.
pub fn graft_forests(f: &Forest, g: &Forest) -> Result<Forest> {
    let mut trees = BTreeSet::new();
    for a in f {
        for b in g {
            let grafted = a.graft(b).map_err(|e| match e {
                Error::SiblingCollision { label, .. } => {
                    Error::PairCollision { left: a.clone(), right: b.clone(), label }
                }
                other => other,
            })?;
            trees.insert(grafted);
        }
    }
    Ok(Forest { trees })
}

/// Raises every member of `f` by `t`: each member is replaced by `t` with the
/// member's branches rooted beneath every leaf of `t`. The singleton member
/// maps to `t` itself, and a singleton `t` collapses the result to `{root}`.
pub fn raise_forest(t: &Tree, f: &Forest) -> Result<Forest> {
    if t.is_singleton() {
        return Ok(Forest::identity());
    }
    f.iter().map(|member| t.raise(member)).collect::<Result<BTreeSet<_>>>().map(|trees| Forest { trees })
}
