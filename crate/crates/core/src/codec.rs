//! Evaluating trees to numbers and encoding numbers as trees.
//!
//! Siblings multiply and a child subtree is the exponent of its parent's
//! prime, so `(r (2 (3 (2))))` is `2^(3^2) = 512`. Exponents are evaluated
//! before they are applied. Inverted children of the root contribute to the
//! denominator.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::tree::{Label, Tree};

/// Exact results larger than this many bits are refused with
/// [`Error::ValueTooLarge`].
pub const MAX_EVAL_BITS: u64 = 1 << 26;

/// A positive rational in lowest terms. Integers have denominator 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EvalValue {
    numerator: BigUint,
    denominator: BigUint,
}

impl EvalValue {
    /// Reduces `numerator / denominator`; both must be nonzero.
    pub fn new(numerator: BigUint, denominator: BigUint) -> Result<EvalValue> {
        if numerator.is_zero() || denominator.is_zero() {
            return Err(Error::ZeroInput);
        }
        let g = numerator.gcd(&denominator);
        Ok(EvalValue { numerator: numerator / &g, denominator: denominator / g })
    }

    pub fn integer(value: BigUint) -> Result<EvalValue> {
        EvalValue::new(value, BigUint::one())
    }

    pub fn numerator(&self) -> &BigUint {
        &self.numerator
    }

    pub fn denominator(&self) -> &BigUint {
        &self.denominator
    }

    pub fn is_integer(&self) -> bool {
        self.denominator.is_one()
    }

    /// `num/den` even when the denominator is 1.
    pub fn as_fraction(&self) -> impl fmt::Display + '_ {
        struct Fraction<'a>(&'a EvalValue);
        impl fmt::Display for Fraction<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}/{}", self.0.numerator, self.0.denominator)
            }
        }
        Fraction(self)
    }
}

impl fmt::Display for EvalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, self.denominator)
        }
    }
}

impl FromStr for EvalValue {
    type Err = Error;

    /// `n` or `n/d` in decimal.
    fn from_str(s: &str) -> Result<EvalValue> {
        let parse = |part: &str, offset: usize| -> Result<BigUint> {
            if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Parse { offset, message: "expected a decimal natural" });
            }
            part.parse::<BigUint>().map_err(|_| Error::Parse { offset, message: "expected a decimal natural" })
        };
        match s.split_once('/') {
            Some((n, d)) => EvalValue::new(parse(n, 0)?, parse(d, n.len() + 1)?),
            None => EvalValue::integer(parse(s, 0)?),
        }
    }
}

/// A positive rational as prime powers, `p^e` in the numerator or the
/// denominator, primes ascending within each side. Exact even when the
/// decimal value is far too large to build.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactoredValue {
    numerator: Vec<(u64, BigUint)>,
    denominator: Vec<(u64, BigUint)>,
}

impl FactoredValue {
    pub fn numerator(&self) -> &[(u64, BigUint)] {
        &self.numerator
    }

    pub fn denominator(&self) -> &[(u64, BigUint)] {
        &self.denominator
    }

    /// Upper bound on the bit length of the larger side.
    pub fn bits_estimate(&self) -> u64 {
        let side = |terms: &[(u64, BigUint)]| {
            terms.iter().fold(0u64, |acc, (p, e)| {
                let e = e.to_u64().unwrap_or(u64::MAX);
                acc.saturating_add(e.saturating_mul(u64::from(64 - p.leading_zeros())))
            })
        };
        side(&self.numerator).max(side(&self.denominator))
    }

    /// The decimal value, if it fits within [`MAX_EVAL_BITS`].
    pub fn to_value(&self) -> Result<EvalValue> {
        if self.bits_estimate() > MAX_EVAL_BITS {
            return Err(Error::ValueTooLarge);
        }
        let side = |terms: &[(u64, BigUint)]| {
            terms.iter().fold(BigUint::one(), |acc, (p, e)| {
                acc * BigUint::from(*p).pow(e.to_u32().expect("bounded by MAX_EVAL_BITS"))
            })
        };
        Ok(EvalValue { numerator: side(&self.numerator), denominator: side(&self.denominator) })
    }
}

impl fmt::Display for FactoredValue {
    /// `2^30*3/5^2`; an empty side prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |f: &mut fmt::Formatter<'_>, terms: &[(u64, BigUint)]| {
            if terms.is_empty() {
                return f.write_str("1");
            }
            for (i, (p, e)) in terms.iter().enumerate() {
                if i > 0 {
                    f.write_str("*")?;
                }
                if e.is_one() {
                    write!(f, "{p}")?;
                } else {
                    write!(f, "{p}^{e}")?;
                }
            }
            Ok(())
        };
        side(f, &self.numerator)?;
        f.write_str("/")?;
        side(f, &self.denominator)
    }
}

/// Prime-power form of a rational tree: every exponent is evaluated exactly,
/// the final powers are not.
pub fn eval_factored(tree: &Tree) -> Result<FactoredValue> {
    let mut value = FactoredValue { numerator: Vec::new(), denominator: Vec::new() };
    for (label, sub) in tree.branches() {
        let term = (label.prime_value()?, eval_integer_tree(sub)?);
        if label.is_inverted() {
            value.denominator.push(term);
        } else {
            value.numerator.push(term);
        }
    }
    Ok(value)
}

/// Result of [`eval_bounded`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundedEval {
    Value(BigUint),
    OverBound,
}

/// Integer value of a tree without inverted labels.
pub fn eval_integer_tree(tree: &Tree) -> Result<BigUint> {
    if tree.has_inverse() {
        return Err(Error::InverseLabelPresent);
    }
    eval_product(tree.branches().iter())
}

/// Rational value: plain root branches build the numerator, inverted ones the
/// denominator.
pub fn eval_rational_tree(tree: &Tree) -> Result<EvalValue> {
    let (plain, inverted): (Vec<_>, Vec<_>) = tree.branches().iter().partition(|(l, _)| !l.is_inverted());
    let numerator = eval_product(plain.into_iter())?;
    let denominator = eval_product(inverted.into_iter())?;
    debug_assert!(numerator.gcd(&denominator).is_one(), "validated trees evaluate to reduced fractions");
    Ok(EvalValue { numerator, denominator })
}

fn eval_product<'a>(branches: impl Iterator<Item = &'a (Label, Tree)>) -> Result<BigUint> {
    let mut acc = BigUint::one();
    for (label, sub) in branches {
        let p = label.prime_value()?;
        let exponent = eval_integer_tree(sub)?;
        let exponent = exponent.to_u64().ok_or(Error::ValueTooLarge)?;
        let bits = exponent.saturating_mul(u64::from(64 - p.leading_zeros()));
        if bits.saturating_add(acc.bits()) > MAX_EVAL_BITS {
            return Err(Error::ValueTooLarge);
        }
        acc *= BigUint::from(p).pow(exponent as u32);
    }
    Ok(acc)
}

/// Evaluates an integer tree only as far as needed to decide whether its value
/// is at most `bound`. Exponents are themselves evaluated against the bit
/// length of what remains, so towers are never expanded past the bound.
pub fn eval_bounded(tree: &Tree, bound: &BigUint) -> Result<BoundedEval> {
    if tree.has_inverse() {
        return Err(Error::InverseLabelPresent);
    }
    Ok(match bounded(tree, bound)? {
        Some(v) => BoundedEval::Value(v),
        None => BoundedEval::OverBound,
    })
}

fn bounded(tree: &Tree, bound: &BigUint) -> Result<Option<BigUint>> {
    if bound.is_zero() {
        return Ok(None);
    }
    let mut acc = BigUint::one();
    for (label, sub) in tree.branches() {
        let p = BigUint::from(label.prime_value()?);
        let remaining = bound / &acc;
        if remaining < p {
            return Ok(None);
        }
        // p ≥ 2, so p^e ≤ remaining forces e < bits(remaining)
        let exponent_cap = BigUint::from(remaining.bits() - 1);
        let Some(exponent) = bounded(sub, &exponent_cap)? else {
            return Ok(None);
        };
        let exponent = exponent.to_u32().expect("exponent is below the bit length of the bound");
        let power = p.pow(exponent);
        if power > remaining {
            return Ok(None);
        }
        acc *= power;
    }
    Ok(Some(acc))
}

/// Prime factorization by trial division, primes ascending. Intended for
/// inputs up to about `10^12`.
pub fn factor(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut take = |m: &mut u64, p: u64| {
        let mut e = 0;
        while (*m).is_multiple_of(p) {
            *m /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    take(&mut m, 2);
    take(&mut m, 3);
    let mut d = 5u64;
    while d.checked_mul(d).is_some_and(|dd| dd <= m) {
        take(&mut m, d);
        take(&mut m, d + 2);
        d += 6;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// Largest trial divisor [`factor_natural`] tries before giving up on a
/// cofactor that does not fit in 64 bits.
pub const TRIAL_DIVISION_LIMIT: u64 = 1 << 24;

/// Factorization of an arbitrary-precision natural by trial division. Works
/// for any input whose cofactor fits in `u64` once divisors up to
/// [`TRIAL_DIVISION_LIMIT`] are removed, which covers every smooth number
/// such as the values of exponent towers over small primes.
pub fn factor_natural(m: &BigUint) -> Result<Vec<(u64, u64)>> {
    if m.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut m = m.clone();
    let mut out: Vec<(u64, u64)> = Vec::new();
    let mut d = 2u64;
    while m.to_u64().is_none() {
        if d > TRIAL_DIVISION_LIMIT {
            return Err(Error::ValueTooLarge);
        }
        let mut e = 0u64;
        while (&m % d).is_zero() {
            m /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    for (p, e) in factor(m.to_u64().expect("loop exits once m fits")) {
        match out.last_mut() {
            Some((q, f)) if *q == p => *f += u64::from(e),
            _ => out.push((p, u64::from(e))),
        }
    }
    Ok(out)
}

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    n >= 2 && matches!(factor(n).as_slice(), [(p, 1)] if *p == n)
}

/// The unique integer tree evaluating to `m`.
pub fn encode_integer(m: u64) -> Result<Tree> {
    if m == 0 {
        return Err(Error::ZeroInput);
    }
    let factors: Vec<(u64, u64)> = factor(m).into_iter().map(|(p, e)| (p, u64::from(e))).collect();
    encode_factors(&factors, false)
}

/// [`encode_integer`] for arbitrary-precision input.
pub fn encode_natural(m: &BigUint) -> Result<Tree> {
    encode_factors(&factor_natural(m)?, false)
}

/// The tree of a reduced rational value.
pub fn encode_value(value: &EvalValue) -> Result<Tree> {
    let plain = encode_factors(&factor_natural(value.numerator())?, false)?;
    let inverted = encode_factors(&factor_natural(value.denominator())?, true)?;
    plain.graft(&inverted)
}

/// The unique rational tree evaluating to `num/den`, after reduction.
pub fn encode_rational(num: u64, den: u64) -> Result<Tree> {
    if num == 0 || den == 0 {
        return Err(Error::ZeroInput);
    }
    let g = num.gcd(&den);
    let side = |n: u64| -> Vec<(u64, u64)> { factor(n).into_iter().map(|(p, e)| (p, u64::from(e))).collect() };
    let plain = encode_factors(&side(num / g), false)?;
    let inverted = encode_factors(&side(den / g), true)?;
    plain.graft(&inverted)
}

fn encode_factors(factors: &[(u64, u64)], inverted: bool) -> Result<Tree> {
    let mut branches = Vec::with_capacity(factors.len());
    for &(p, e) in factors {
        branches.push((Label::from_prime(p, inverted)?, encode_integer(e)?));
    }
    Tree::from_branches(branches)
}
