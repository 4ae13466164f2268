//! Recursive-descent parser for the polynomial grammar
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' integer)?
//! atom   := integer | 'x' '(' integer ',' integer ')' | '(' expr ')'
//! ```
//!
//! Whitespace (including newlines) is ignored between tokens.

use std::sync::Arc;

use super::{Monomial, Polynomial, RingSpec};
use crate::error::ParseError;

pub(super) fn parse_polynomial(ring: &Arc<RingSpec>, text: &str) -> Result<Polynomial, ParseError> {
    let mut p = Parser {
        ring,
        chars: text.chars().collect(),
        pos: 0,
    };
    let f = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error(format!("unexpected '{}'", p.chars[p.pos])));
    }
    Ok(f)
}

struct Parser<'a> {
    ring: &'a Arc<RingSpec>,
    chars: Vec<char>,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: String) -> ParseError {
        self.error_at(self.pos, message)
    }

    fn error_at(&self, pos: usize, message: String) -> ParseError {
        let before = &self.chars[..pos.min(self.chars.len())];
        let line = 1 + before.iter().filter(|&&c| c == '\n').count();
        let column = 1 + before.iter().rev().take_while(|&&c| c != '\n').count();
        ParseError {
            line,
            column,
            message,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            Some(got) => Err(self.error(format!("expected '{c}', found '{got}'"))),
            None => Err(self.error(format!("expected '{c}', found end of input"))),
        }
    }

    fn integer(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(match self.chars.get(self.pos) {
                Some(c) => self.error(format!("expected an integer, found '{c}'")),
                None => self.error("expected an integer, found end of input".into()),
            });
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits
            .parse()
            .map_err(|_| self.error_at(start, format!("integer {digits} is too large")))
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut negate = false;
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                negate = true;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { first.neg() } else { first };
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t).expect("same ring");
                }
                Some('-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(&t).expect("same ring");
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc.mul(&f).expect("same ring");
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let start = self.pos;
            let e = self.integer()?;
            if e > super::MAX_EXPONENT as u64 {
                return Err(self.error_at(
                    start,
                    format!("exponent {e} exceeds {}", super::MAX_EXPONENT),
                ));
            }
            // single terms are exponentiated directly
            if let [(m, c)] = base.terms() {
                let mut mono = Monomial::ONE;
                for _ in 0..e {
                    mono = mono.mul(m);
                }
                let coeff = self.ring.field().pow(*c, e);
                return Ok(Polynomial::monomial(self.ring, mono, coeff));
            }
            return Ok(base.pow(e as u32));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Some('x') => {
                let start = self.pos;
                self.pos += 1;
                self.expect('(')?;
                let i = self.integer()?;
                self.expect(',')?;
                let j = self.integer()?;
                self.expect(')')?;
                self.ring
                    .variable(i as usize, j as usize)
                    .map_err(|e| self.error_at(start, e.to_string()))
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let c = (n % self.ring.characteristic() as u64) as u32;
                Ok(Polynomial::monomial(self.ring, Monomial::ONE, c))
            }
            Some(c) => Err(self.error(format!("unexpected '{c}'"))),
            None => Err(self.error("unexpected end of input".into())),
        }
    }
}
