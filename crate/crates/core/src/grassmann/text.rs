//! Parser for the canonical text form produced by `Display`.
//!
//! Grammar: sums and products of rational literals (`3`, `3/4`), imaginary
//! literals (`2i`, `3/4i`), generators `g1`..`g8` and parenthesized groups.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::SuperNumber;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

struct Parser {
    chars: Vec<char>,
    pos: usize,
    n: usize,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| {
            self.chars[start..self.pos]
                .iter()
                .collect::<String>()
                .parse()
                .unwrap()
        })
    }

    fn expr(&mut self) -> Result<SuperNumber<Scalar>> {
        let mut acc = if self.peek() == Some('-') {
            self.pos += 1;
            -self.term()?
        } else {
            self.term()?
        };
        while let Some(op @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if op == '+' { acc + t } else { acc - t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<SuperNumber<Scalar>> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = acc * self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<SuperNumber<Scalar>> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(bad("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some('-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some('g') => {
                self.pos += 1;
                let i = self.digits().ok_or_else(|| bad("expected generator index"))?;
                let i: usize = i.try_into().map_err(|_| bad("generator index"))?;
                SuperNumber::generator(self.n, i)
            }
            Some('i') => {
                self.pos += 1;
                Ok(SuperNumber::scalar(self.n, Complex::new(BigRational::zero(), BigRational::one())))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits().unwrap();
                let mut den = BigInt::from(1);
                if self.chars.get(self.pos) == Some(&'/') {
                    self.pos += 1;
                    den = self.digits().ok_or_else(|| bad("expected denominator"))?;
                    if den.is_zero() {
                        return Err(bad("zero denominator"));
                    }
                }
                let r = BigRational::new(num, den);
                let c = if self.chars.get(self.pos) == Some(&'i') {
                    self.pos += 1;
                    Complex::new(BigRational::zero(), r)
                } else {
                    Complex::new(r, BigRational::zero())
                };
                Ok(SuperNumber::scalar(self.n, c))
            }
            other => Err(bad(format!("unexpected {other:?} at offset {}", self.pos))),
        }
    }
}

/// Parse an element of `Λ_n` from text such as `3/2 - g1*g2 + (0+1i)*g3`.
pub fn parse(text: &str, n: usize) -> Result<SuperNumber<Scalar>> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        n,
    };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(bad(format!("trailing input at offset {}", p.pos)));
    }
    Ok(v)
}
