//! ASCII grammar for polynomials:
//!
//! ```text
//! poly   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := integer ['/' integer] | ('x'|'y') ['^' integer]
//! ```
//!
//! Whitespace is ignored everywhere.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Monomial, MonomialOrdering, Polynomial, Rational};
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    offset: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, offset: usize) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
            offset,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.offset + self.pos,
            message: message.into(),
        })
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

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("nonempty digit string"))
    }

    fn exponent(&mut self) -> Result<u32> {
        let at = self.pos;
        let e = self.integer()?;
        u32::try_from(e).or_else(|_| {
            self.pos = at;
            self.err("exponent too large")
        })
    }

    fn factor(&mut self, coeff: &mut Rational, mono: &mut Monomial) -> Result<()> {
        match self.peek() {
            Some(b'x') | Some(b'y') => {
                let var = self.src[self.pos];
                self.pos += 1;
                let e = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.exponent()?
                } else {
                    1
                };
                if var == b'x' {
                    mono.x += e;
                } else {
                    mono.y += e;
                }
                Ok(())
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let value = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    let den = self.integer()?;
                    if den.is_zero() {
                        self.pos = at;
                        return self.err("zero denominator");
                    }
                    Rational::new(num, den)
                } else {
                    Rational::from_integer(num)
                };
                *coeff *= value;
                Ok(())
            }
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }

    fn term(&mut self) -> Result<(Rational, Monomial)> {
        let mut coeff = Rational::one();
        let mut mono = Monomial::ONE;
        self.factor(&mut coeff, &mut mono)?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            self.factor(&mut coeff, &mut mono)?;
        }
        Ok((coeff, mono))
    }

    fn polynomial(&mut self) -> Result<Polynomial> {
        let mut p = Polynomial::zero();
        let mut negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let (c, m) = self.term()?;
            p.add_term(m, &if negative { -c } else { c });
            match self.peek() {
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                None => return Ok(p),
                Some(c) => return self.err(format!("unexpected character '{}'", c as char)),
            }
            self.pos += 1;
        }
    }
}

pub fn parse_polynomial(s: &str) -> Result<Polynomial> {
    Parser::new(s, 0).polynomial()
}

/// Parses a comma separated generator list, optionally wrapped in `<...>`.
pub fn parse_ideal(s: &str) -> Result<Vec<Polynomial>> {
    let trimmed = s.trim();
    let (body, base) = match trimmed.strip_prefix('<').and_then(|t| t.strip_suffix('>')) {
        Some(inner) => (inner, s.find('<').unwrap_or(0) + 1),
        None => (s, 0),
    };
    let mut gens = Vec::new();
    let mut offset = base;
    for piece in body.split(',') {
        gens.push(Parser::new(piece, offset).polynomial()?);
        offset += piece.len() + 1;
    }
    Ok(gens)
}

fn write_coefficient(f: &mut fmt::Formatter<'_>, c: &Rational, m: Monomial) -> fmt::Result {
    let magnitude = c.abs();
    if m == Monomial::ONE {
        write!(f, "{magnitude}")
    } else if magnitude.is_one() {
        write!(f, "{m}")
    } else {
        write!(f, "{magnitude}*{m}")
    }
}

impl fmt::Display for Polynomial {
    /// Terms are listed from the largest to the smallest monomial under `ds`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by(|a, b| MonomialOrdering::Ds.cmp(*b.0, *a.0));
        for (i, (m, c)) in terms.into_iter().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write_coefficient(f, c, *m)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    #[test]
    fn parses_example_polynomial() {
        let f = parse_polynomial("7*y^3 + 15*x^7 - 21*x^5*y").unwrap();
        let g = Polynomial::from_int_terms(&[(7, 0, 3), (15, 7, 0), (-21, 5, 1)]);
        assert_eq!(f, g);
    }

    #[test]
    fn optional_pieces_and_whitespace() {
        let f = parse_polynomial(" - x ^2* y+ 3 /6 *y*y ").unwrap();
        let g = Polynomial::from_terms([
            (int(-1), Monomial::new(2, 1)),
            (crate::poly::rat(1, 2), Monomial::new(0, 2)),
        ]);
        assert_eq!(f, g);
        assert_eq!(parse_polynomial("2").unwrap(), Polynomial::constant(int(2)));
        assert!(parse_polynomial("x - x").unwrap().is_zero());
    }

    #[test]
    fn errors_carry_positions() {
        let cases = [("x + ", 4), ("x^", 2), ("3*z", 2), ("x y", 2), ("1/0*x", 2), ("", 0)];
        for (src, pos) in cases {
            match parse_polynomial(src) {
                Err(Error::Parse { position, .. }) => assert_eq!(position, pos, "{src}"),
                other => panic!("{src}: {other:?}"),
            }
        }
    }

    #[test]
    fn format_round_trips() {
        for src in [
            "x^2 - 4*y^3",
            "y^3 - 3*x^8*y + 3*x^12",
            "-x*y + 1/2*y^2",
            "1 + x",
            "0",
        ] {
            let f = parse_polynomial(src).unwrap();
            let printed = f.to_string();
            assert_eq!(parse_polynomial(&printed).unwrap(), f);
            assert_eq!(parse_polynomial(&printed).unwrap().to_string(), printed);
        }
        assert_eq!(parse_polynomial("y^2 + x^2 - x*y").unwrap().to_string(), "x^2 - x*y + y^2");
    }

    #[test]
    fn ideal_lists() {
        let gens = parse_ideal("x^3, x^2*y, y^3").unwrap();
        assert_eq!(gens.len(), 3);
        assert_eq!(parse_ideal("<x, y>").unwrap().len(), 2);
        match parse_ideal("x, y^") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 5),
            other => panic!("{other:?}"),
        }
    }
}
