//! The symbol grammar.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := factor ('*' factor)*
//! factor  := '-' factor | primary ('^' integer)?
//! primary := number | 'i' | 'z'k | 'conj(z'k')' | 'abs2(z)' | '(' expr ')'
//! ```
//!
//! Variables are 1-based (`z1 … zd`). The printed form of a `MixedPoly`
//! parses back to the same polynomial, bit for bit.

use std::fmt;

use bergman::{HoloPoly, MixedPoly, C64};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

type Parsed<T> = Result<T, ParseError>;

/// Parses a mixed polynomial in `d` variables.
pub fn parse_mixed(input: &str, d: usize) -> Parsed<MixedPoly> {
    let mut p = Parser { src: input.as_bytes(), pos: 0, d };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

/// Parses a holomorphic polynomial; any `conj` or `abs2` term is an error.
pub fn parse_holo(input: &str, d: usize) -> Parsed<HoloPoly> {
    parse_mixed(input, d)?.to_holo().ok_or_else(|| ParseError {
        position: 0,
        message: "expected a holomorphic polynomial (no conj or abs2 terms)".into(),
    })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    d: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError { position: self.pos, message: message.into() }
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

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Parsed<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{token}'")))
        }
    }

    fn expr(&mut self) -> Parsed<MixedPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Parsed<MixedPoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Parsed<MixedPoly> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.factor()?.scale(C64::new(-1.0, 0.0)));
        }
        let base = self.primary()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.integer()?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Parsed<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a non-negative integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse().map_err(|_| ParseError { position: start, message: format!("integer '{text}' is too large") })
    }

    fn variable(&mut self) -> Parsed<usize> {
        self.expect("z")?;
        let start = self.pos;
        let k = self.integer()? as usize;
        if k == 0 || k > self.d {
            return Err(ParseError { position: start, message: format!("variable z{k} is outside z1..z{}", self.d) });
        }
        Ok(k - 1)
    }

    fn number(&mut self) -> Parsed<f64> {
        let start = self.pos;
        let s = self.src;
        let digits = |p: &mut usize| {
            let from = *p;
            while *p < s.len() && s[*p].is_ascii_digit() {
                *p += 1;
            }
            *p > from
        };
        let mut p = self.pos;
        let mut any = digits(&mut p);
        if p < s.len() && s[p] == b'.' {
            p += 1;
            any |= digits(&mut p);
        }
        if !any {
            return Err(self.error("expected a number"));
        }
        if p < s.len() && (s[p] == b'e' || s[p] == b'E') {
            let mut q = p + 1;
            if q < s.len() && (s[q] == b'+' || s[q] == b'-') {
                q += 1;
            }
            if digits(&mut q) {
                p = q;
            }
        }
        self.pos = p;
        let text = std::str::from_utf8(&s[start..p]).expect("ascii number");
        text.parse().map_err(|_| ParseError { position: start, message: format!("bad number '{text}'") })
    }

    fn primary(&mut self) -> Parsed<MixedPoly> {
        let d = self.d;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(")")?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => Ok(MixedPoly::constant(d, C64::new(self.number()?, 0.0))),
            Some(b'z') => Ok(MixedPoly::z(d, self.variable()?)),
            Some(b'i') => {
                self.pos += 1;
                Ok(MixedPoly::constant(d, C64::new(0.0, 1.0)))
            }
            Some(b'c') => {
                self.expect("conj(")?;
                let j = self.variable()?;
                self.expect(")")?;
                Ok(MixedPoly::zbar(d, j))
            }
            Some(b'a') => {
                self.expect("abs2(")?;
                self.expect("z")?;
                self.expect(")")?;
                Ok(MixedPoly::abs2(d))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
