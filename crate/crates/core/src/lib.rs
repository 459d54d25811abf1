//! Prime-labeled rooted trees and the arithmetic they encode.
//!
//! Every positive integer corresponds to exactly one rooted tree whose
//! non-root vertices carry distinct prime labels among siblings: siblings
//! multiply, and a child subtree is the exponent of its parent's prime.
//! Allowing inverted primes on the children of the root extends the
//! correspondence to the positive rationals.
//!
//! The crate is `no_std` (it needs `alloc`). Modules:
//!
//! - [`tree`]: the canonical [`Tree`] type, validation, ordering, grafting.
//! - [`sexpr`]: the `(r (2 (2)) (3))` text form.
//! - [`forest`]: duplicate-free [`Forest`]s with grafting and raising.
//! - [`generator`]: the bounded-height forest recurrence, its counts, and
//!   value-bounded generation.
//! - [`codec`]: evaluation of trees and the inverse encodings.
//! - [`sieve`]: primes in `(q, 2q)` from composite trees.
//! - [`rationals`]: rational forests and a duplicate-free stream of the
//!   positive rationals.

#![no_std]

extern crate alloc;

pub mod codec;
mod error;
pub mod forest;
pub mod generator;
pub mod primes;
pub mod rationals;
pub mod sexpr;
pub mod sieve;
pub mod tree;

pub use codec::{BoundedEval, EvalValue, FactoredValue};
pub use error::{Error, Result};
pub use forest::Forest;
pub use tree::{Label, RawTree, Tree};
