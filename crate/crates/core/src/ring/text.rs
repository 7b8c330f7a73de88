//! Text form of Laurent polynomials: `1 - 1/2*v^3 + I*q^-2`.
//!
//! A term is a product of factors joined by `*`; a factor is a rational
//! number `p` or `p/r`, the unit `I`, or a power `v^e` / `q^e` (`^e` optional).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::laurent::LaurentPoly;
use crate::coeff::Coeff;
use crate::error::{Error, Result};

pub fn parse_laurent(src: &str) -> Result<LaurentPoly> {
    let s: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut p = Parser { s: &s, pos: 0 };
    let mut out = LaurentPoly::zero();
    let mut first = true;
    while p.pos < s.len() {
        let mut sign = 1;
        match p.peek() {
            Some('+') => p.pos += 1,
            Some('-') => {
                sign = -1;
                p.pos += 1
            }
            _ if !first => return Err(p.err("expected '+' or '-'")),
            _ => {}
        }
        first = false;
        let (c, e) = p.term()?;
        out.add_term(e, &c.scale_int(sign));
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

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {}", self.pos))
    }

    fn term(&mut self) -> Result<(Coeff, i64)> {
        let mut c = Coeff::one();
        let mut e = 0i64;
        loop {
            match self.peek() {
                Some(d) if d.is_ascii_digit() => {
                    let r = self.rational()?;
                    c = &c * &Coeff::real(r);
                }
                Some('I') => {
                    self.pos += 1;
                    c = &c * &Coeff::i();
                }
                Some(x @ ('v' | 'q')) => {
                    self.pos += 1;
                    let k = if self.peek() == Some('^') {
                        self.pos += 1;
                        self.integer()?
                    } else {
                        1
                    };
                    let k = if x == 'q' { k.checked_mul(2).ok_or_else(|| self.err("exponent overflow"))? } else { k };
                    e = e.checked_add(k).ok_or_else(|| self.err("exponent overflow"))?;
                }
                _ => return Err(self.err("expected a number, I, v or q")),
            }
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                return Ok((c, e));
            }
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(d) if d.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let text: String = self.s[start..self.pos].iter().collect();
        Ok(text.parse().expect("digit run parses"))
    }

    fn rational(&mut self) -> Result<BigRational> {
        let n = self.digits()?;
        if self.peek() == Some('/') {
            self.pos += 1;
            let d = self.digits()?;
            if d.is_zero() {
                return Err(self.err("zero denominator"));
            }
            return Ok(BigRational::new(n, d));
        }
        Ok(BigRational::from_integer(n))
    }

    fn integer(&mut self) -> Result<i64> {
        let neg = match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let n = self.digits()?;
        let n: i64 = n.try_into().map_err(|_| self.err("exponent out of range"))?;
        Ok(if neg { -n } else { n })
    }
}

fn push_piece(out: &mut String, mag: &BigRational, unit: &str, e: i64) {
    let neg = mag.is_negative();
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    let a = mag.abs();
    let mut factors: Vec<String> = Vec::new();
    if !a.is_one() || (unit.is_empty() && e == 0) {
        factors.push(a.to_string());
    }
    if !unit.is_empty() {
        factors.push(unit.to_string());
    }
    match e {
        0 => {}
        1 => factors.push("v".into()),
        _ => factors.push(format!("v^{e}")),
    }
    out.push_str(&factors.join("*"));
}

/// Canonical form: ascending `v`-exponents, real part before `I` part.
pub fn format_laurent(p: &LaurentPoly) -> String {
    let mut out = String::new();
    for (e, c) in p.terms() {
        if !c.re.is_zero() {
            push_piece(&mut out, &c.re, "", e);
        }
        if !c.im.is_zero() {
            push_piece(&mut out, &c.im, "I", e);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_reference_example() {
        let p = parse_laurent("1 - 1/2*v^3 + I*q^-2").unwrap();
        assert_eq!(p.coeff(0), Coeff::from_int(1));
        assert_eq!(p.coeff(3), Coeff::from_frac(-1, 2));
        assert_eq!(p.coeff(-4), Coeff::i());
        assert_eq!(format_laurent(&p), "I*v^-4 + 1 - 1/2*v^3");
        assert_eq!(parse_laurent(&format_laurent(&p)).unwrap(), p);
    }

    #[test]
    fn mixed_and_degenerate_terms() {
        assert!(parse_laurent("0").unwrap().is_zero());
        assert!(parse_laurent("v - v").unwrap().is_zero());
        let p = parse_laurent("-q + 3*v*v - 2*I*v^-1").unwrap();
        assert_eq!(p.coeff(2), Coeff::from_int(2));
        assert_eq!(p.coeff(-1), Coeff::i().scale_int(-2));
        assert_eq!(format_laurent(&LaurentPoly::from_int(-5)), "-5");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_laurent("").is_err());
        assert!(parse_laurent("1 +").is_err());
        assert!(parse_laurent("2x").is_err());
        assert!(parse_laurent("1/0").is_err());
        assert!(parse_laurent("v^").is_err());
    }
}
