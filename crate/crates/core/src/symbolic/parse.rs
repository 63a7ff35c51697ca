//! Parser for the canonical text rendering of parameters and rational functions.
//!
//! Accepts `+ - * / ^`, parentheses, integers, the parameters `nu`, `lambda`,
//! `a`, `q` and the variable `X`. Exponents are (possibly negative) integers.

use num_bigint::BigInt;

use super::poly::{Var, Q};
use super::ratfn::ParamScalar;
use super::zeta::ZetaRational;
use crate::error::{Error, Result};

struct Parser<'s> {
    src: &'s [u8],
    pos: usize,
}

impl<'s> Parser<'s> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<ZetaRational> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ZetaRational> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let rhs = self.unary()?;
                acc = acc.try_div(&rhs).map_err(|e| Error::Parse { pos: at, msg: e.to_string() })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<ZetaRational> {
        if self.eat(b'-') {
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<ZetaRational> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let neg = self.eat(b'-');
        let at = self.pos;
        let k = self.integer()?;
        let k: i64 = i64::try_from(k).or_else(|_| self.err("exponent out of range"))?;
        let k = if neg { -k } else { k };
        base.pow(k).map_err(|e| Error::Parse { pos: at, msg: e.to_string() })
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
        Ok(digits.parse().expect("ascii digits"))
    }

    fn atom(&mut self) -> Result<ZetaRational> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(ZetaRational::constant(ParamScalar::from_rational(Q::from_integer(n))))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                if name == "X" {
                    return Ok(ZetaRational::x());
                }
                match Var::from_name(name) {
                    Some(v) => Ok(ZetaRational::constant(ParamScalar::var(v))),
                    None => {
                        self.pos = start;
                        self.err(format!("unknown identifier {name:?}"))
                    }
                }
            }
            Some(c) => self.err(format!("unexpected character {:?}", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a rational function in `X`.
pub fn parse_zeta(s: &str) -> Result<ZetaRational> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let z = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(z)
}

/// Parses an element of `Q(ν, λ, a, q)`; `X` must not occur.
pub fn parse_param(s: &str) -> Result<ParamScalar> {
    let z = parse_zeta(s)?;
    if z.is_zero() {
        return Ok(ParamScalar::zero());
    }
    if z.is_laurent_polynomial() && z.num().span() == 1 && z.num().low() == 0 {
        return Ok(z.num().coeff(0));
    }
    Err(Error::Parse { pos: 0, msg: format!("{s:?} depends on X") })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for s in [
            "(1)/(1 - X)",
            "(1 - X)/(1 + (-nu*q^-2 - 1 + q)*X + (-nu*q^-1 + lambda*q^-1 - q)*X^2)",
            "9*X^2",
            "(1)/(1 - 1/9*X)",
            "q + a^-1*q^2",
            "((nu)/(q + 1))*X^-1 + 3",
        ] {
            let z = parse_zeta(s).unwrap();
            let r = z.to_string();
            assert_eq!(parse_zeta(&r).unwrap(), z, "{s} -> {r}");
            assert_eq!(parse_zeta(&r).unwrap().to_string(), r);
        }
        assert_eq!(parse_zeta("(1 - X)/(1 - X)").unwrap().to_string(), "1");
    }

    #[test]
    fn parameters() {
        assert_eq!(parse_param("3/2").unwrap(), ParamScalar::from_ratio(3, 2).unwrap());
        assert!(parse_param("X + 1").is_err());
        assert!(matches!(parse_zeta("1 + "), Err(Error::Parse { .. })));
        assert!(matches!(parse_zeta("mu"), Err(Error::Parse { pos: 0, .. })));
        assert!(parse_zeta("1/0").is_err());
    }
}
