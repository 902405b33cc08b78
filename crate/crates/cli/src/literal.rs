//! Polynomial literals: `t` is θ, `u` the generator of an extension field.
//!
//! Grammar: sums of products of powers, with integers, `t`, `u` and parentheses as atoms.
//! Juxtaposition multiplies, so `2t^3 + (u+1)t` parses.

use carlitz_lab::{Field, PolyA};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {input:?} at column {column}: {message}")]
pub struct ParseError {
    pub input: String,
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

struct Parser<'a> {
    field: &'a Field,
    input: &'a str,
    chars: Vec<char>,
    pos: usize,
}

pub fn parse_poly(field: &Field, input: &str) -> Result<PolyA, ParseError> {
    let mut p = Parser { field, input, chars: input.chars().collect(), pos: 0 };
    p.skip_ws();
    if p.peek().is_none() {
        return Err(p.error("empty polynomial"));
    }
    let out = p.sum()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(p.error(&format!("unexpected {c:?}")));
    }
    Ok(out)
}

impl Parser<'_> {
    fn error(&self, message: &str) -> ParseError {
        ParseError { input: self.input.to_string(), column: self.pos + 1, message: message.to_string() }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn sum(&mut self) -> Result<PolyA, ParseError> {
        self.skip_ws();
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -&self.product()?
            }
            Some('+') => {
                self.pos += 1;
                self.product()?
            }
            _ => self.product()?,
        };
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = &acc + &self.product()?;
                }
                Some('-') => {
                    self.pos += 1;
                    acc = &acc - &self.product()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<PolyA, ParseError> {
        let mut acc = self.power()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(c) if c == '(' || c == 't' || c == 'u' || c.is_ascii_digit() => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<PolyA, ParseError> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        let n = self.digits().ok_or_else(|| self.error("expected a non-negative exponent after '^'"))?;
        let n: u64 = n.parse().map_err(|_| ParseError {
            input: self.input.to_string(),
            column: start + 1,
            message: "exponent too large".into(),
        })?;
        Ok(base.pow_fast(n))
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn atom(&mut self) -> Result<PolyA, ParseError> {
        self.skip_ws();
        let f = self.field;
        match self.peek() {
            Some('t') => {
                self.pos += 1;
                Ok(PolyA::theta(f))
            }
            Some('u') => {
                if f.e() == 1 {
                    return Err(self.error("'u' names the generator of an extension field; this field is prime"));
                }
                self.pos += 1;
                Ok(PolyA::constant(&f.generator()))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.sum()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let s = self.digits().expect("at least one digit");
                // reduce digit by digit so arbitrarily long integers work
                let p = f.p();
                let r = s.bytes().fold(0u64, |acc, b| (acc * 10 + u64::from(b - b'0')) % p);
                Ok(PolyA::constant(&f.int(r as i64)))
            }
            Some(c) => Err(self.error(&format!("unexpected {c:?}"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
