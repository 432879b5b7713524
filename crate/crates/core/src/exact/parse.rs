//! Small parser for polynomial expressions in `N`, as written in tables:
//! `N(N-1)(N+1)/3`, `N^2(N-1)/12`, `2^8 (12N^2 - 32)`, `C(N+6,7)`.
//! Juxtaposition multiplies; `/` divides by a constant.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{BigRat, ExactError, IntPoly};

pub fn parse_poly(src: &str) -> Result<IntPoly, ExactError> {
    let mut p = Parser {
        chars: src.chars().collect(),
        pos: 0,
        src,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> ExactError {
        ExactError::Parse(format!("{what} at offset {} in {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<IntPoly, ExactError> {
        let mut acc = if self.eat('-') {
            -&self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<IntPoly, ExactError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some('/') => {
                    self.pos += 1;
                    let d = self.power()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(self.err("division by a non-constant or zero"));
                    }
                    acc = acc.scale(&(BigRat::from_integer(1.into()) / d.leading()));
                }
                Some(c) if c.is_ascii_digit() || c == 'N' || c == '(' || c == 'C' => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<IntPoly, ExactError> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.integer()?;
            let e = e.to_u32().ok_or_else(|| self.err("bad exponent"))?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<IntPoly, ExactError> {
        match self.peek() {
            Some('N') => {
                self.pos += 1;
                Ok(IntPoly::var())
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some('C') => {
                self.pos += 1;
                if !self.eat('(') {
                    return Err(self.err("expected '(' after C"));
                }
                let top = self.expr()?;
                if !self.eat(',') {
                    return Err(self.err("expected ','"));
                }
                let k = self
                    .integer()?
                    .to_usize()
                    .ok_or_else(|| self.err("bad k"))?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                binomial_of(&top, k).ok_or_else(|| self.err("binomial top must be N + const"))
            }
            Some(c) if c.is_ascii_digit() => {
                Ok(IntPoly::constant(BigRat::from_integer(self.integer()?)))
            }
            _ => Err(self.err("unexpected token")),
        }
    }

    fn integer(&mut self) -> Result<BigInt, ExactError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits"))
    }
}

fn binomial_of(top: &IntPoly, k: usize) -> Option<IntPoly> {
    if top.degree() != Some(1) || top.leading() != BigRat::from_integer(1.into()) {
        return None;
    }
    let shift = top.constant_term();
    if !shift.is_integer() {
        return None;
    }
    let shift = shift.to_integer();
    if shift.is_zero() {
        return Some(IntPoly::binomial(k));
    }
    Some(IntPoly::binomial_shifted(shift.to_i64()?, k))
}
