use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use crate::tree::{Label, Tree};

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two children of the same vertex carry the same label. `path` lists
    /// the labels from the root down to that vertex.
    SiblingCollision { path: Vec<Label>, label: Label },
    /// An inverted label below the children of the root.
    MisplacedInverse { path: Vec<Label>, label: Label },
    /// The root carries both `p` and `1/p`.
    OpposedLabels { prime_index: u32 },
    /// Grafting two forest members collided on a root label.
    PairCollision { left: Tree, right: Tree, label: Label },
    /// Integer evaluation of a tree that has inverted labels.
    InverseLabelPresent,
    ZeroInput,
    /// The exact value would exceed the evaluation size limit.
    ValueTooLarge,
    /// An enumeration would produce more trees than the budget allows.
    SizeOverBudget { required: BigUint, budget: u64 },
    NotPrime(u64),
    /// A prime label outside the range of the prime table.
    LabelOutOfRange(u64),
    InvalidParameter(&'static str),
    Parse { offset: usize, message: &'static str },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::SiblingCollision { path, label } => {
                write!(f, "sibling label collision: {label} occurs twice below ")?;
                write_path(f, path)
            }
            Error::MisplacedInverse { path, label } => {
                write!(f, "inverted label {label} below depth 1, under ")?;
                write_path(f, path)
            }
            Error::OpposedLabels { prime_index } => {
                let p = Label::prime(*prime_index);
                write!(f, "root carries both {p} and its inverse")
            }
            Error::PairCollision { left, right, label } => {
                write!(f, "grafting {left} onto {right} collides on label {label}")
            }
            Error::InverseLabelPresent => f.write_str("tree has inverted labels; not an integer tree"),
            Error::ZeroInput => f.write_str("input must be at least 1"),
            Error::ValueTooLarge => f.write_str("value exceeds the evaluation size limit"),
            Error::SizeOverBudget { required, budget } => {
                write!(f, "enumeration needs {required} trees, budget is {budget}")
            }
            Error::NotPrime(n) => write!(f, "{n} is not prime"),
            Error::LabelOutOfRange(p) => write!(f, "prime label {p} is outside the prime table"),
            Error::InvalidParameter(msg) => f.write_str(msg),
            Error::Parse { offset, message } => write!(f, "parse error at byte {offset}: {message}"),
        }
    }
}

fn write_path(f: &mut fmt::Formatter<'_>, path: &[Label]) -> fmt::Result {
    f.write_str("r")?;
    for label in path {
        write!(f, "/{label}")?;
    }
    Ok(())
}

impl core::error::Error for Error {}
