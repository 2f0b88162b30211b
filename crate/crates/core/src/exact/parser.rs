//! Parser for factored rational expressions.
//!
//! Grammar (ASCII, whitespace between tokens is ignored):
//!
//! ```text
//! expr   := factor (('*'|'/') factor)*
//! factor := scalar | 'z' | '(' 'z' '-' scalar ')' ('^' signed_int)?
//! scalar := signed_rat (('+'|'-') rat? 'i')? | sign? 'i'
//! rat    := int ('/' int)?
//! ```
//!
//! `z` alone is sugar for `(z-0)^1` and takes no exponent. Sums of factors
//! are deliberately not part of the grammar: every input is already a
//! product of linear factors and scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use super::factored::FactoredRational;
use super::gaussian::GaussianRational;

/// Syntax or value error, with the byte offset where it was detected.
#[derive(Clone, PartialEq, Eq, Debug, Error)]
#[error("parse error at offset {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

/// Parses a full expression into factored normal form.
pub fn parse_rational(text: &str) -> Result<FactoredRational, ParseError> {
    let mut cur = Cursor::new(text);
    let mut acc = parse_factor(&mut cur)?;
    loop {
        cur.skip_ws();
        match cur.peek() {
            None => break,
            Some(b'*') => {
                cur.bump();
                acc = &acc * &parse_factor(&mut cur)?;
            }
            Some(b'/') => {
                cur.bump();
                acc = &acc / &parse_factor(&mut cur)?;
            }
            Some(_) => return Err(cur.err("expected '*', '/', or end of input")),
        }
    }
    Ok(acc)
}

/// Parses a full Gaussian-rational literal (no trailing input allowed).
pub fn parse_scalar(text: &str) -> Result<GaussianRational, ParseError> {
    let mut cur = Cursor::new(text);
    let value = cur.parse_scalar()?;
    cur.expect_end()?;
    Ok(value)
}

/// Parses a full signed rational literal such as `-3/4`.
pub fn parse_signed_rational(text: &str) -> Result<BigRational, ParseError> {
    let mut cur = Cursor::new(text);
    cur.skip_ws();
    let negative = cur.eat_sign();
    cur.skip_ws();
    let value = cur.parse_unsigned_rat()?;
    cur.expect_end()?;
    Ok(if negative { -value } else { value })
}

fn parse_factor(cur: &mut Cursor) -> Result<FactoredRational, ParseError> {
    cur.skip_ws();
    match cur.peek() {
        Some(b'(') => {
            cur.bump();
            cur.skip_ws();
            cur.expect(b'z')?;
            cur.skip_ws();
            cur.expect(b'-')?;
            let root = cur.parse_scalar()?;
            cur.skip_ws();
            cur.expect(b')')?;
            cur.skip_ws();
            let exponent = if cur.eat(b'^') {
                cur.parse_signed_int()?
            } else {
                1
            };
            Ok(FactoredRational::linear(root).pow(exponent))
        }
        Some(b'z') => {
            cur.bump();
            Ok(FactoredRational::linear(GaussianRational::zero()))
        }
        Some(_) => {
            let at = cur.pos();
            let value = cur.parse_scalar()?;
            FactoredRational::constant(value).map_err(|_| ParseError {
                position: at,
                message: "zero unit: scalar factor must be nonzero".into(),
            })
        }
        None => Err(cur.err("expected factor, found end of input")),
    }
}

pub(crate) struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        Self {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    pub(crate) fn pos(&self) -> usize {
        self.pos
    }

    pub(crate) fn set_pos(&mut self, pos: usize) {
        self.pos = pos;
    }

    pub(crate) fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            position: self.pos,
            message: message.into(),
        }
    }

    pub(crate) fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    pub(crate) fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    pub(crate) fn bump(&mut self) -> Option<u8> {
        let b = self.peek();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    pub(crate) fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    /// Consumes a leading `+` or `-`; returns whether the value is negated.
    pub(crate) fn eat_sign(&mut self) -> bool {
        if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        }
    }

    pub(crate) fn expect(&mut self, byte: u8) -> Result<(), ParseError> {
        if self.eat(byte) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", byte as char)))
        }
    }

    pub(crate) fn expect_end(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.pos == self.src.len() {
            Ok(())
        } else {
            Err(self.err("expected end of input"))
        }
    }

    fn parse_digits(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected digits"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("digits are ascii");
        Ok(text.parse().expect("digit string parses as integer"))
    }

    /// `int ('/' int)?` — the slash is taken only when a digit follows
    /// immediately, so expression-level division is left untouched.
    pub(crate) fn parse_unsigned_rat(&mut self) -> Result<BigRational, ParseError> {
        let numer = self.parse_digits()?;
        if self.peek() == Some(b'/')
            && matches!(self.src.get(self.pos + 1), Some(b) if b.is_ascii_digit())
        {
            self.bump();
            let at = self.pos;
            let denom = self.parse_digits()?;
            if denom.is_zero() {
                return Err(ParseError {
                    position: at,
                    message: "malformed scalar: zero denominator".into(),
                });
            }
            Ok(BigRational::new(numer, denom))
        } else {
            Ok(BigRational::from_integer(numer))
        }
    }

    /// Signed exponent, capped at |value| ≤ 10000: larger powers make the
    /// exact arithmetic astronomically large without any modeling value.
    pub(crate) fn parse_signed_int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let negative = self.eat_sign();
        let at = self.pos;
        let magnitude = self.parse_digits()?;
        let value: i64 = magnitude
            .try_into()
            .ok()
            .filter(|v: &i64| *v <= 10_000)
            .ok_or_else(|| ParseError {
                position: at,
                message: "exponent out of range".into(),
            })?;
        Ok(if negative { -value } else { value })
    }

    /// Greedy Gaussian-rational literal with backtracking: the imaginary
    /// tail `±[rat]i` is consumed only when it completes, so expression
    /// operators after the scalar stay available to the caller.
    pub(crate) fn parse_scalar(&mut self) -> Result<GaussianRational, ParseError> {
        self.skip_ws();
        let negative = self.eat_sign();
        self.skip_ws();
        if self.eat(b'i') {
            let unit = GaussianRational::i();
            return Ok(if negative { -unit } else { unit });
        }
        if !matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            return Err(self.err("expected scalar"));
        }
        let head = {
            let r = self.parse_unsigned_rat()?;
            if negative {
                -r
            } else {
                r
            }
        };
        let saved = self.pos;
        self.skip_ws();
        if self.eat(b'i') {
            return Ok(GaussianRational::new(BigRational::zero(), head));
        }
        match self.peek() {
            Some(sign @ (b'+' | b'-')) => {
                self.bump();
                self.skip_ws();
                let mut imag = if matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
                    match self.parse_unsigned_rat() {
                        Ok(r) => r,
                        Err(_) => {
                            self.set_pos(saved);
                            return Ok(GaussianRational::from_real(head));
                        }
                    }
                } else {
                    BigRational::from_integer(BigInt::from(1))
                };
                self.skip_ws();
                if self.eat(b'i') {
                    if sign == b'-' {
                        imag = -imag;
                    }
                    Ok(GaussianRational::new(head, imag))
                } else {
                    self.set_pos(saved);
                    Ok(GaussianRational::from_real(head))
                }
            }
            _ => {
                self.set_pos(saved);
                Ok(GaussianRational::from_real(head))
            }
        }
    }
}
