//! The weight-spec mini-language used on the command line.
//!
//! A spec is a signed sum of terms; each term is an optional rational
//! coefficient (with an optional `*`) followed by one of
//!
//! - `0`
//! - `w<i>`: the i-th fundamental weight
//! - `a<i>`: the i-th simple root
//! - `rho`
//! - `highest-root`
//! - `sum-simple`: the sum of the simple roots
//! - `eps:c1,...,cn`: ambient coordinates (rationals as `p/q`), optionally
//!   wrapped in `<>`, `()` or `[]`
//!
//! Examples: `w1`, `2w1-w2`, `rho - a1`, `eps:1/2,1/2,-1/2`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::{parse_rational, Rational, RationalVector};
use crate::rootsystem::RootSystem;

/// Parses a weight spec into an ambient vector of `rs`.
pub fn parse_weight(spec: &str, rs: &RootSystem) -> Result<RationalVector> {
    let compact: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty weight spec".into()));
    }
    let mut p = Parser {
        s: &compact,
        pos: 0,
        rs,
    };
    let mut total = rs.zero();
    let mut first = true;
    while p.pos < p.s.len() {
        let negative = match p.peek() {
            Some('+') => {
                p.pos += 1;
                false
            }
            Some('-') => {
                p.pos += 1;
                true
            }
            _ if first => false,
            Some(c) => return Err(p.error(&format!("expected '+' or '-', found {c:?}"))),
            None => unreachable!(),
        };
        first = false;
        let term = p.term()?;
        total = if negative { &total - &term } else { &total + &term };
    }
    Ok(total)
}

struct Parser<'a> {
    s: &'a str,
    pos: usize,
    rs: &'a RootSystem,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.s[self.pos..].chars().next()
    }

    fn rest(&self) -> &str {
        &self.s[self.pos..]
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("weight spec {:?} at offset {}: {msg}", self.s, self.pos))
    }

    fn term(&mut self) -> Result<RationalVector> {
        let coeff = self.coefficient()?;
        if coeff.is_some() && self.peek() == Some('*') {
            self.pos += 1;
        }
        let atom = match (coeff.as_ref(), self.peek()) {
            // A bare number: only `0` names a weight.
            (Some(c), None | Some('+') | Some('-')) => {
                if c.is_zero() {
                    return Ok(self.rs.zero());
                }
                return Err(self.error("a bare number other than 0 is not a weight"));
            }
            _ => self.atom()?,
        };
        Ok(match coeff {
            Some(c) => atom.scale(&c),
            None => atom,
        })
    }

    /// Optional leading `p` or `p/q`.
    fn coefficient(&mut self) -> Result<Option<Rational>> {
        let digits = |s: &str| s.chars().take_while(char::is_ascii_digit).count();
        let n = digits(self.rest());
        if n == 0 {
            return Ok(None);
        }
        let mut len = n;
        if self.rest()[n..].starts_with('/') {
            let m = digits(&self.rest()[n + 1..]);
            if m == 0 {
                return Err(self.error("missing denominator"));
            }
            len += 1 + m;
        }
        let c = parse_rational(&self.rest()[..len])?;
        self.pos += len;
        Ok(Some(c))
    }

    fn index(&mut self) -> Result<usize> {
        let n = self.rest().chars().take_while(char::is_ascii_digit).count();
        if n == 0 {
            return Err(self.error("expected an index"));
        }
        let i: usize = self.rest()[..n].parse().map_err(|_| self.error("index out of range"))?;
        self.pos += n;
        if i == 0 || i > self.rs.rank() {
            return Err(self.error(&format!("index {i} outside 1..={}", self.rs.rank())));
        }
        Ok(i)
    }

    fn atom(&mut self) -> Result<RationalVector> {
        for (word, value) in [
            ("highest-root", self.rs.highest_root().clone()),
            ("sum-simple", self.rs.sum_of_simple_roots()),
            ("rho", self.rs.rho().clone()),
        ] {
            if self.rest().starts_with(word) {
                self.pos += word.len();
                return Ok(value);
            }
        }
        if self.rest().starts_with("eps:") {
            self.pos += 4;
            return self.eps();
        }
        match self.peek() {
            Some('w') => {
                self.pos += 1;
                let i = self.index()?;
                Ok(self.rs.fundamental_weight(i).clone())
            }
            Some('a') => {
                self.pos += 1;
                let i = self.index()?;
                Ok(self.rs.simple_root(i).clone())
            }
            Some(c) => Err(self.error(&format!("unexpected {c:?}"))),
            None => Err(self.error("unexpected end of spec")),
        }
    }

    fn eps(&mut self) -> Result<RationalVector> {
        let close = match self.peek() {
            Some('<') => Some('>'),
            Some('(') => Some(')'),
            Some('[') => Some(']'),
            _ => None,
        };
        if close.is_some() {
            self.pos += 1;
        }
        let mut coords = Vec::new();
        loop {
            let start = self.pos;
            if matches!(self.peek(), Some('+') | Some('-')) {
                self.pos += 1;
            }
            if self.coefficient()?.is_none() {
                return Err(self.error("expected a rational coordinate"));
            }
            coords.push(parse_rational(&self.s[start..self.pos])?);
            if self.peek() == Some(',') {
                self.pos += 1;
            } else {
                break;
            }
        }
        if let Some(c) = close {
            if self.peek() != Some(c) {
                return Err(self.error(&format!("expected {c:?}")));
            }
            self.pos += 1;
        }
        if coords.len() != self.rs.ambient_dim() {
            return Err(self.error(&format!(
                "eps: needs {} coordinates, got {}",
                self.rs.ambient_dim(),
                coords.len()
            )));
        }
        Ok(RationalVector::new(coords))
    }
}
