//! Text syntax for polynomials in `x`.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := atom ('^' uint)?
//! atom   := uint | 'x' | '(' expr ')' | '{' expr '}'
//! ```
//!
//! Division is only allowed by nonzero constants.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::qpoly::{Poly, Rational};

pub fn parse_poly(input: &str) -> Result<Poly> {
    let chars: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut p = Parser { s: &chars, pos: 0 };
    let out = p.expr()?;
    if p.pos != chars.len() {
        return Err(Error::Parse(format!(
            "unexpected '{}' at offset {} in {input:?}",
            chars[p.pos], p.pos
        )));
    }
    Ok(out)
}

struct Parser<'a> {
    s: &'a [char],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = if self.eat('-') {
            -self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc + self.term()?;
            } else if self.eat('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = acc * self.factor()?;
            } else if self.eat('/') {
                let d = self.factor()?;
                if !d.is_constant() || d.is_zero() {
                    return Err(Error::Parse(format!(
                        "division by non-constant or zero {d}"
                    )));
                }
                acc = acc.scale(&d.leading_coeff().recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.uint()?;
            let e: u32 = (&e)
                .try_into()
                .map_err(|_| Error::Parse(format!("exponent {e} too large")))?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some('x') => {
                self.pos += 1;
                Ok(Poly::x())
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                Ok(Poly::constant(Rational::from_integer(n)))
            }
            Some('{') => {
                // `x^{2}` style braces are accepted as grouping.
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat('}') {
                    return Err(Error::Parse("missing '}'".into()));
                }
                Ok(inner)
            }
            other => Err(Error::Parse(format!(
                "unexpected {:?} at offset {}",
                other, self.pos
            ))),
        }
    }

    fn uint(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse(format!("expected digits at offset {start}")));
        }
        let digits: String = self.s[start..self.pos].iter().collect();
        let n: BigInt = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer {digits}")))?;
        Ok(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_common_forms() {
        assert_eq!(parse_poly("x^2 - 1").unwrap(), Poly::from_ints(&[-1, 0, 1]));
        assert_eq!(
            parse_poly(" 3/2 * x ^ 2 - x + 1 ").unwrap(),
            Poly::from_coeffs(vec![
                Rational::from_integer(1.into()),
                Rational::from_integer((-1).into()),
                Rational::new(3.into(), 2.into()),
            ])
        );
        assert_eq!(
            parse_poly("(x^2-x)/2").unwrap(),
            parse_poly("1/2*x^2 - 1/2*x").unwrap()
        );
        assert_eq!(parse_poly("-x").unwrap(), Poly::from_ints(&[0, -1]));
        assert_eq!(parse_poly("0").unwrap(), Poly::zero());
        assert!(parse_poly("2(x+1)").is_err());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_poly("").is_err());
        assert!(parse_poly("y").is_err());
        assert!(parse_poly("x/x").is_err());
        assert!(parse_poly("1/0").is_err());
        assert!(parse_poly("(x").is_err());
    }
}
