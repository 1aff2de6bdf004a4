//! Text form of elements.
//!
//! ```text
//! element := term { ("+" | "-") term }
//! term    := [ coeff "*" ] factor { " " factor }
//! factor  := gen [ "^" exponent ]
//! gen     := "a(" int ")" | "h(" int "," int ")" | "b(" int "," int ")"
//! ```
//!
//! A leading sign is accepted, `0` is the zero element and a bare
//! coefficient denotes a multiple of the unit monomial `1`.

use super::{canonicalize_powers, signed_residue, Element, GenKind, Generator, Monomial};
use crate::error::{Error, Result};
use crate::grading::PrimeContext;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t')) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn int(&mut self) -> Result<u32> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        s.parse::<u32>()
            .map_err(|_| Error::OutOfRange(format!("integer {s} at position {start}")))
    }

    fn factor(&mut self) -> Result<(Generator, u32)> {
        let start = self.pos;
        let kind = match self.peek() {
            Some(b'a') => GenKind::A,
            Some(b'h') => GenKind::H,
            Some(b'b') => GenKind::B,
            _ => return self.err("expected generator a(..), h(..) or b(..)"),
        };
        self.pos += 1;
        self.eat(b'(')?;
        self.skip_ws();
        let i = self.int()?;
        self.skip_ws();
        let j = if kind == GenKind::A {
            0
        } else {
            self.eat(b',')?;
            self.skip_ws();
            let j = self.int()?;
            self.skip_ws();
            j
        };
        self.eat(b')')?;
        let g = Generator::new(kind, i, j).map_err(|e| match e {
            Error::InvalidGenerator(msg) => Error::OutOfRange(format!("{msg} at position {start}")),
            other => other,
        })?;
        let mut exp = 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            exp = self.int()?;
            if exp == 0 {
                return self.err("exponent must be at least 1");
            }
        }
        Ok((g, exp))
    }

    fn factors(&mut self) -> Result<Vec<(Generator, u32)>> {
        let mut out = vec![self.factor()?];
        loop {
            let save = self.pos;
            self.skip_ws();
            if matches!(self.peek(), Some(b'a' | b'h' | b'b')) {
                out.push(self.factor()?);
            } else {
                self.pos = save;
                return Ok(out);
            }
        }
    }

    /// `(coefficient, factors)`; empty factors mean the unit monomial.
    fn term(&mut self, p: u32) -> Result<(u32, Vec<(Generator, u32)>)> {
        if matches!(self.peek(), Some(b'0'..=b'9')) {
            let start = self.pos;
            let c = self.int()?;
            if c == 0 || c >= p {
                return Err(Error::OutOfRange(format!(
                    "coefficient {c} at position {start} not in [1, {}]",
                    p - 1
                )));
            }
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.skip_ws();
                Ok((c, self.factors()?))
            } else {
                Ok((c, Vec::new()))
            }
        } else {
            Ok((1, self.factors()?))
        }
    }
}

/// Parses an element and reduces it to canonical form.
pub fn parse_element(text: &str, ctx: &PrimeContext) -> Result<Element> {
    let p = ctx.p();
    let mut ps = Parser::new(text);
    ps.skip_ws();
    if text.trim() == "0" {
        return Ok(Element::zero());
    }
    let mut out = Element::zero();
    let mut sign: i8 = 1;
    match ps.peek() {
        Some(b'-') => {
            sign = -1;
            ps.pos += 1;
        }
        Some(b'+') => ps.pos += 1,
        _ => {}
    }
    loop {
        ps.skip_ws();
        let (c, raw) = ps.term(p)?;
        if let Some((s, m)) = canonicalize_powers(&raw, ctx) {
            out.add_term(m, signed_residue(sign * s, c, p), p);
        }
        ps.skip_ws();
        match ps.peek() {
            None => return Ok(out),
            Some(b'+') => sign = 1,
            Some(b'-') => sign = -1,
            Some(_) => return ps.err("expected '+', '-' or end of input"),
        }
        ps.pos += 1;
    }
}

/// Parses a single canonical monomial such as `a(2)^2 h(2,0)` or `1`.
pub fn parse_monomial(text: &str, ctx: &PrimeContext) -> Result<Monomial> {
    let text = text.trim();
    if text == "1" {
        return Ok(Monomial::one());
    }
    let mut ps = Parser::new(text);
    let raw = ps.factors()?;
    if ps.pos != ps.src.len() {
        return ps.err("trailing input after monomial");
    }
    match canonicalize_powers(&raw, ctx) {
        Some((1, m)) if m.factors() == &raw[..] => Ok(m),
        _ => Err(Error::Syntax {
            pos: 0,
            msg: format!("'{text}' is not a canonical monomial"),
        }),
    }
}

/// Deterministic text form: terms sorted by rendered monomial, coefficients
/// shown as signed representatives in `(-p/2, p/2)`.
pub fn render_element(x: &Element, ctx: &PrimeContext) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let p = ctx.p();
    let mut terms: Vec<(String, u32)> = x.terms().map(|(m, c)| (m.to_string(), c)).collect();
    terms.sort();
    let mut out = String::new();
    for (k, (m, c)) in terms.iter().enumerate() {
        let (negative, mag) = if *c > p / 2 { (true, p - c) } else { (false, *c) };
        match (k, negative) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        if m == "1" {
            out.push_str(&mag.to_string());
        } else if mag == 1 && !negative {
            out.push_str(m);
        } else {
            out.push_str(&format!("{mag}*{m}"));
        }
    }
    out
}
