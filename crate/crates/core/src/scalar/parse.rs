//! Recursive-descent parser for scalar text.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary | 'i')*
//! unary := ('-' | '+') unary | power
//! power := atom ('^' ['-' | '+'] integer)?
//! atom  := integer | 'i' | '(' expr ')'
//! ```
//!
//! `-2^5` is `-(2^5)`. The token `i` is only accepted for `Field::Qi`.

use num_bigint::BigInt;

use super::{Field, Scalar};
use crate::error::{Error, Result};

const MAX_EXPONENT: u64 = 1 << 14;

pub(super) fn parse(text: &str, field: Field) -> Result<Scalar> {
    let mut p = Parser { text, bytes: text.as_bytes(), pos: 0, field };
    p.skip_ws();
    if p.pos == p.bytes.len() {
        return Err(Error::parse(text, "empty input"));
    }
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(Error::parse(text, format!("unexpected input at byte {}", p.pos)));
    }
    Ok(value)
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
    field: Field,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn err(&self, reason: impl Into<String>) -> Error {
        Error::parse(self.text, reason)
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.unary()?;
        while let Some(op @ (b'*' | b'/' | b'i')) = self.peek() {
            // `2i` is read as `2*i`
            if op != b'i' {
                self.pos += 1;
            }
            let rhs = self.unary()?;
            acc = if op != b'/' {
                &acc * &rhs
            } else {
                if rhs.is_zero() {
                    return Err(Error::ZeroDenominator);
                }
                acc.try_div(&rhs)?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Scalar> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let negative = match self.peek() {
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
        let digits = self.digits()?;
        let magnitude: u64 = digits
            .parse()
            .ok()
            .filter(|e| *e <= MAX_EXPONENT)
            .ok_or_else(|| self.err(format!("exponent {digits} out of range")))?;
        let exp = if negative { -(magnitude as i64) } else { magnitude as i64 };
        base.pow(exp).map_err(|_| Error::ZeroDenominator)
    }

    fn atom(&mut self) -> Result<Scalar> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("missing ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'i') => {
                self.pos += 1;
                match self.field {
                    Field::Qi => Ok(Scalar::i()),
                    Field::Q => Err(self.err("'i' is not an element of Q")),
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits()?;
                let value: BigInt = digits.parse().map_err(|_| self.err("bad integer"))?;
                Ok(Scalar::from_bigint(self.field, value))
            }
            Some(c) => Err(self.err(format!("unexpected character {:?}", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(&self.text[start..self.pos])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_examples() {
        assert_eq!(parse("3/2", Field::Q).unwrap(), Scalar::ratio(Field::Q, 3, 2).unwrap());
        assert_eq!(parse("-2^5", Field::Q).unwrap(), Scalar::from_int(Field::Q, -32));
        let half = parse("(1+i)/2", Field::Qi).unwrap();
        assert_eq!(half.re_numer(), &BigInt::from(1));
        assert_eq!(half.im_numer(), &BigInt::from(1));
        assert_eq!(half.denom(), &BigInt::from(2));
        // (1+i)^3 = -2+2i, times i = -2-2i
        assert_eq!(parse("(1+i)^3*i", Field::Qi).unwrap(), parse("-2-2*i", Field::Qi).unwrap());
        assert_eq!(parse("1/2-3i", Field::Qi).unwrap(), parse("1/2-3*i", Field::Qi).unwrap());
        assert!(parse("2i", Field::Q).is_err());
        assert_eq!(parse(" 2 ^ -2 * 3 ", Field::Q).unwrap(), Scalar::ratio(Field::Q, 3, 4).unwrap());
    }

    #[test]
    fn rejects_malformed_text() {
        for bad in ["", "1/", "(1+2", "2^", "abc", "1 2", "i"] {
            assert!(parse(bad, Field::Q).is_err(), "{bad:?} should fail");
        }
        assert!(matches!(parse("1/0", Field::Q), Err(Error::ZeroDenominator)));
        assert!(matches!(parse("3/(2-2)", Field::Q), Err(Error::ZeroDenominator)));
        assert!(matches!(parse("0^-1", Field::Q), Err(Error::ZeroDenominator)));
        assert!(parse("2^99999999", Field::Q).is_err());
    }
}
