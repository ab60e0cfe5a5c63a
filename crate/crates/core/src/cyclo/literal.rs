//! Scalar literal grammar shared by every input format.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' ['-'] integer)?
//! atom   := integer | 'z' | '(' expr ')'
//! ```
//!
//! `z` denotes `zeta_N` for the conductor declared by the enclosing file.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::number::CycNumber;
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col0: usize,
    conductor: u32,
}

/// Parse a scalar literal in `Q(zeta_conductor)`.
pub fn parse_scalar(src: &str, conductor: u32) -> Result<CycNumber> {
    parse_scalar_at(src, conductor, 1, 1)
}

/// As [`parse_scalar`], reporting errors relative to a position in a file.
pub fn parse_scalar_at(src: &str, conductor: u32, line: usize, col: usize) -> Result<CycNumber> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, line, col0: col, conductor };
    p.skip_ws();
    if p.at_end() {
        return Err(p.err("empty scalar"));
    }
    let v = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.err(format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(v.coerce(conductor))
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line, self.col0 + self.pos, msg)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t')) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<CycNumber> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<CycNumber> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.unary()?;
                acc = acc.div(&d).map_err(|_| Error::parse(self.line, self.col0 + at, "division by zero"))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<CycNumber> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<CycNumber> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let neg = self.eat(b'-');
            self.skip_ws();
            let at = self.pos;
            let e = self.integer()?;
            let e: i64 = e
                .try_into()
                .map_err(|_| Error::parse(self.line, self.col0 + at, "exponent too large"))?;
            let e = if neg { -e } else { e };
            return base
                .pow(e)
                .map_err(|_| Error::parse(self.line, self.col0 + at, "negative power of zero"));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<CycNumber> {
        self.skip_ws();
        match self.peek() {
            Some(b'0'..=b'9') => {
                let n = self.integer()?;
                Ok(CycNumber::from_rational(BigRational::from_integer(n)))
            }
            Some(b'z') => {
                self.pos += 1;
                Ok(CycNumber::zeta(self.conductor))
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(v)
            }
            Some(c) => Err(self.err(format!("unexpected `{}`", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}
