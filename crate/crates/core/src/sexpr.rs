//! Text form of trees.
//!
//! ```text
//! tree   := "(" "r" branch* ")"
//! branch := "(" label branch* ")"
//! label  := <prime decimal> | "1/" <prime decimal>
//! ```
//!
//! Output uses canonical branch order and single spaces, e.g. 12 is
//! `(r (2 (2)) (3))`. The parser accepts any whitespace between tokens.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::tree::{Label, RawTree, Tree};

const MAX_DEPTH: usize = 512;

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(r")?;
        write_branches(f, self)?;
        f.write_str(")")
    }
}

fn write_branches(f: &mut fmt::Formatter<'_>, tree: &Tree) -> fmt::Result {
    for (label, sub) in tree.branches() {
        write!(f, " ({label}")?;
        write_branches(f, sub)?;
        f.write_str(")")?;
    }
    Ok(())
}

impl FromStr for Tree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Tree> {
        Tree::validate(&parse_raw(s)?)
    }
}

/// Parses the text form without validating sibling labels.
pub fn parse_raw(text: &str) -> Result<RawTree> {
    let mut parser = Parser { src: text.as_bytes(), pos: 0 };
    parser.skip_ws();
    parser.expect(b'(')?;
    parser.skip_ws();
    let start = parser.pos;
    if parser.atom() != b"r" {
        return Err(Error::Parse { offset: start, message: "expected root marker `r`" });
    }
    let root = parser.children(0)?;
    parser.skip_ws();
    if parser.pos != parser.src.len() {
        return Err(parser.error("trailing input after tree"));
    }
    Ok(root)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: &'static str) -> Error {
        Error::Parse { offset: self.pos, message }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        if self.src.get(self.pos) == Some(&byte) {
            self.pos += 1;
            Ok(())
        } else if byte == b'(' {
            Err(self.error("expected `(`"))
        } else {
            Err(self.error("expected `)`"))
        }
    }

    fn atom(&mut self) -> &'a [u8] {
        let start = self.pos;
        while self
            .src
            .get(self.pos)
            .is_some_and(|&b| !b.is_ascii_whitespace() && b != b'(' && b != b')')
        {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    /// Branches up to and including the closing paren of the current list.
    fn children(&mut self, depth: usize) -> Result<RawTree> {
        if depth > MAX_DEPTH {
            return Err(self.error("nesting too deep"));
        }
        let mut children = Vec::new();
        loop {
            self.skip_ws();
            match self.src.get(self.pos) {
                Some(b')') => {
                    self.pos += 1;
                    return Ok(RawTree { children });
                }
                Some(b'(') => {
                    self.pos += 1;
                    self.skip_ws();
                    let label = self.label()?;
                    let sub = self.children(depth + 1)?;
                    children.push((label, sub));
                }
                Some(_) => return Err(self.error("expected `(` or `)`")),
                None => return Err(self.error("unexpected end of input")),
            }
        }
    }

    fn label(&mut self) -> Result<Label> {
        let start = self.pos;
        let atom = self.atom();
        let (inverted, digits) = match atom.strip_prefix(b"1/") {
            Some(rest) => (true, rest),
            None => (false, atom),
        };
        if digits.is_empty() || !digits.iter().all(u8::is_ascii_digit) || digits[0] == b'0' {
            return Err(Error::Parse { offset: start, message: "expected a prime label" });
        }
        let value = core::str::from_utf8(digits)
            .ok()
            .and_then(|d| d.parse::<u64>().ok())
            .ok_or(Error::Parse { offset: start, message: "label out of range" })?;
        Label::from_prime(value, inverted)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn prints_canonical_form() {
        let t: Tree = "(r (3) (2 (2)))".parse().unwrap();
        assert_eq!(t.to_string(), "(r (2 (2)) (3))");
        assert_eq!(Tree::singleton().to_string(), "(r)");
        assert_eq!(Tree::label_tree(0, true).to_string(), "(r (1/2))");
    }

    #[test]
    fn lenient_whitespace() {
        let t: Tree = "  (r\n\t(2   (2))(3) )  ".parse().unwrap();
        assert_eq!(t.to_string(), "(r (2 (2)) (3))");
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "r", "(x)", "(r", "(r (2)", "(r (4))", "(r (0))", "(r (02))", "(r ())", "(r) (r)", "(r (1/))", "(r 2)"] {
            assert!(bad.parse::<Tree>().is_err(), "{bad:?} should fail");
        }
        assert_eq!("(r (4))".parse::<Tree>().unwrap_err(), Error::NotPrime(4));
    }

    #[test]
    fn rejects_invalid_labeling() {
        assert!(matches!("(r (2) (2))".parse::<Tree>(), Err(Error::SiblingCollision { .. })));
        assert!(matches!("(r (3 (1/2)))".parse::<Tree>(), Err(Error::MisplacedInverse { .. })));
        assert!(matches!("(r (2) (1/2))".parse::<Tree>(), Err(Error::OpposedLabels { .. })));
    }

    #[test]
    fn deep_nesting_is_an_error_not_a_crash() {
        let mut s = alloc::string::String::from("(r");
        for _ in 0..2000 {
            s.push_str(" (2");
        }
        for _ in 0..2001 {
            s.push(')');
        }
        assert!(matches!(s.parse::<Tree>(), Err(Error::Parse { .. })));
    }
}
