//! Recursive-descent parser for scalar text.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' '-'? digits)?
//! atom  := digits | 'q' | '(' expr ')'
//! ```
//!
//! Every string printed by the `Display` impls of the scalar types is accepted
//! and parses back to the same value.

use alloc::string::{String, ToString};

use num_bigint::BigInt;

use super::{Field, Rational, RationalFunction, ScalarError};

pub(crate) struct Parsed {
    pub value: RationalFunction,
    pub mentions_q: bool,
}

pub(crate) fn parse_expression(s: &str) -> Result<Parsed, ScalarError> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
        mentions_q: false,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("trailing input"));
    }
    Ok(Parsed {
        value,
        mentions_q: p.mentions_q,
    })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    mentions_q: bool,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> ScalarError {
        let text = String::from_utf8_lossy(self.src).to_string();
        ScalarError::Parse(alloc::format!("{what} at offset {} in {text:?}", self.pos))
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RationalFunction, ScalarError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction, ScalarError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul_ref(&self.unary()?);
            } else if self.eat(b'/') {
                let rhs = self.unary()?;
                acc = acc.div_ref(&rhs).ok_or(ScalarError::DivisionByZero)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction, ScalarError> {
        if self.eat(b'-') {
            Ok(-self.unary()?)
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<RationalFunction, ScalarError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let negative = self.eat(b'-');
        let digits = self.digits().ok_or_else(|| self.error("expected exponent"))?;
        let e: i64 = digits
            .parse()
            .map_err(|_| self.error("exponent out of range"))?;
        let e = if negative { -e } else { e };
        base.pow(e).ok_or(ScalarError::DivisionByZero)
    }

    fn atom(&mut self) -> Result<RationalFunction, ScalarError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(v)
            }
            Some(b'q') => {
                self.pos += 1;
                self.mentions_q = true;
                Ok(RationalFunction::q())
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits().expect("peeked a digit");
                let n: BigInt = digits.parse().map_err(|_| self.error("bad integer"))?;
                Ok(RationalFunction::constant(Rational::from_integer(n)))
            }
            _ => Err(self.error("expected a number, q, or '('")),
        }
    }

    fn digits(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            None
        } else {
            Some(String::from_utf8_lossy(&self.src[start..self.pos]).to_string())
        }
    }
}
