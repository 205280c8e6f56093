//! Parser for the polynomial interchange text.
//!
//! Grammar, whitespace-insensitive:
//!
//! ```text
//! poly   := "0" | ["-"] term (("+" | "-") term)*
//! term   := factor ("*" factor)*
//! factor := integer ["/" integer] | variable ["^" integer]
//! variable := "x_" row "_" col "_" order
//! ```
//!
//! `Display` on [`Polynomial`] emits the canonical instance of this grammar:
//! terms from the leading monomial down, unit coefficients and unit
//! exponents omitted.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::CoefficientField;
use super::monomial::{JetVariable, Monomial};
use super::polynomial::Polynomial;
use crate::error::{Error, Result};

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        let chars = src.chars().map(|c| if c == '\u{2212}' { '-' } else { c }).collect();
        Cursor { chars, pos: 0, src }
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

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in {:?}", self.pos, self.src))
    }

    fn digits(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn identifier(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_')
        {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }
}

pub(crate) fn parse_polynomial(text: &str, field: CoefficientField) -> Result<Polynomial> {
    let mut cur = Cursor::new(text);
    let mut terms = Vec::new();
    let mut negative = false;
    if cur.peek() == Some('-') {
        cur.bump();
        negative = true;
    } else if cur.peek() == Some('+') {
        cur.bump();
    }
    loop {
        let (mono, mut coeff) = parse_term(&mut cur)?;
        if negative {
            coeff = -coeff;
        }
        terms.push((mono, coeff));
        match cur.bump() {
            None => break,
            Some('+') => negative = false,
            Some('-') => negative = true,
            Some(_) => return Err(cur.error("expected '+' or '-'")),
        }
    }
    Polynomial::from_terms(field, terms)
}

fn parse_term(cur: &mut Cursor<'_>) -> Result<(Monomial, BigRational)> {
    let mut coeff = BigRational::one();
    let mut factors = Vec::new();
    loop {
        match cur.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = cur.digits()?.parse().map_err(|_| cur.error("bad integer"))?;
                let mut value = BigRational::from_integer(num);
                if cur.peek() == Some('/') {
                    cur.bump();
                    let den: BigInt = cur.digits()?.parse().map_err(|_| cur.error("bad integer"))?;
                    if den.is_zero() {
                        return Err(cur.error("zero denominator"));
                    }
                    value /= BigRational::from_integer(den);
                }
                coeff *= value;
            }
            Some('x') => {
                let ident = cur.identifier();
                let var: JetVariable = ident.parse()?;
                let mut exp = 1u32;
                if cur.peek() == Some('^') {
                    cur.bump();
                    exp = cur.digits()?.parse().map_err(|_| cur.error("bad exponent"))?;
                }
                factors.push((var, exp));
            }
            _ => return Err(cur.error("expected a coefficient or variable")),
        }
        if cur.peek() == Some('*') {
            cur.bump();
        } else {
            break;
        }
    }
    Ok((Monomial::from_factors(factors), coeff))
}
