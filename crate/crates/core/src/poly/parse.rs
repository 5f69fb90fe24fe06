//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-')? power
//! power  := atom ('^' integer)?
//! atom   := integer | 'T' integer | '(' expr ')'
//! ```
//!
//! Division is only allowed by a nonzero constant. Whitespace is ignored.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::ring::Rationals;
use super::sparse::{Poly, MAX_VARS};
use super::HomPoly;
use crate::error::{Error, Result};

/// Parses `text` over variables `T0..T{nvars-1}`.
pub fn parse_poly(text: &str, nvars: usize) -> Result<HomPoly> {
    if nvars == 0 || nvars > MAX_VARS {
        return Err(Error::Range(format!("nvars must be in 1..={MAX_VARS}")));
    }
    let mut p = Parser { src: text.as_bytes(), pos: 0, nvars };
    p.skip_ws();
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

/// Parses with the variable count inferred as one more than the largest index used.
pub fn parse_poly_auto(text: &str) -> Result<HomPoly> {
    parse_poly(text, infer_nvars(text))
}

pub fn infer_nvars(text: &str) -> usize {
    let b = text.as_bytes();
    let mut max = 0usize;
    let mut i = 0;
    while i < b.len() {
        if b[i] == b'T' {
            let mut j = i + 1;
            let mut v = 0usize;
            while j < b.len() && b[j].is_ascii_digit() {
                v = v.saturating_mul(10).saturating_add((b[j] - b'0') as usize);
                j += 1;
            }
            if j > i + 1 {
                max = max.max(v.saturating_add(1));
            }
            i = j;
        } else {
            i += 1;
        }
    }
    max.max(1)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<HomPoly> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<HomPoly> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                b'/' => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    let v = d.constant_value().ok_or_else(|| Error::Parse {
                        pos: at,
                        msg: "division is only allowed by a constant".into(),
                    })?;
                    if v.is_zero() {
                        return Err(Error::Parse { pos: at, msg: "division by zero".into() });
                    }
                    acc = acc.scale(&v.recip());
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<HomPoly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.power()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.power()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<HomPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = u32::try_from(&e)
                .ok()
                .filter(|&e| e <= 255)
                .ok_or_else(|| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<HomPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'T') => {
                let at = self.pos;
                self.pos += 1;
                if !self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                    return Err(self.err("expected a variable index after 'T'"));
                }
                let idx = self.integer()?;
                let idx = usize::try_from(&idx).unwrap_or(usize::MAX);
                if idx >= self.nvars {
                    return Err(Error::Parse {
                        pos: at,
                        msg: format!("variable T{idx} outside T0..T{}", self.nvars - 1),
                    });
                }
                Ok(Poly::var(Rationals, self.nvars, idx))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Poly::constant(Rationals, self.nvars, BigRational::from_integer(n)))
            }
            Some(_) => Err(self.err("expected a number, a variable or '('")),
            None => {
                if self.pos == 0 {
                    Err(self.err("empty input"))
                } else {
                    Err(self.err("unexpected end of input"))
                }
            }
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse::<BigInt>().expect("digits parse"))
    }
}
