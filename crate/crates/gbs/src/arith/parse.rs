//! Text grammar for field elements: rationals `a/b`, Gaussian `a/b+c/di`,
//! and infix expressions over `x`, `y` with `+ - * / ^` and parentheses.
//!
//! A numeric literal is read greedily, so `1/2` is a single rational and
//! `3/4i` is an imaginary literal. The printer emits exactly this grammar.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::field::{Field, FieldElem};
use super::poly::UPoly;
use super::Rat;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rat),
    Imag(Rat),
    Ident(char),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let b = s.as_bytes();
    let mut out = vec![];
    let mut k = 0;
    let digits = |k: &mut usize| {
        let st = *k;
        while *k < b.len() && b[*k].is_ascii_digit() {
            *k += 1;
        }
        &s[st..*k]
    };
    while k < b.len() {
        let c = b[k] as char;
        let start = k;
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let n: BigInt = digits(&mut k).parse().unwrap();
            let mut r = Rat::from_integer(n);
            if k + 1 < b.len() && b[k] == b'/' && b[k + 1].is_ascii_digit() {
                k += 1;
                let d: BigInt = digits(&mut k).parse().unwrap();
                if d.is_zero() {
                    return Err(ParseError { pos: start, msg: "zero denominator".into() });
                }
                r /= Rat::from_integer(d);
            }
            if k < b.len() && b[k] == b'i' {
                k += 1;
                out.push((start, Tok::Imag(r)));
            } else {
                out.push((start, Tok::Num(r)));
            }
        } else if matches!(c, 'x' | 'y' | 'i') {
            k += 1;
            out.push((start, Tok::Ident(c)));
        } else if "+-*/^()".contains(c) {
            k += 1;
            out.push((start, Tok::Op(c)));
        } else {
            return Err(ParseError { pos: start, msg: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    k: usize,
    field: &'a Field,
    len: usize,
}

impl Parser<'_> {
    fn pos(&self) -> usize {
        self.toks.get(self.k).map_or(self.len, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos(), msg: msg.into() })
    }

    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.k) {
            Some((_, Tok::Op(c))) => Some(*c),
            _ => None,
        }
    }

    fn constant(&self, r: Rat) -> Result<FieldElem, ParseError> {
        if let Field::FpX(p) = self.field {
            if (r.denom() % BigInt::from(*p)).is_zero() {
                return self.err(format!("denominator divisible by {p}"));
            }
        }
        Ok(self.field.from_rat(r))
    }

    fn expr(&mut self) -> Result<FieldElem, ParseError> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek_op() {
            self.k += 1;
            let t = self.term()?;
            acc = if c == '+' { acc + t } else { acc - t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<FieldElem, ParseError> {
        let mut acc = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek_op() {
            self.k += 1;
            let t = self.unary()?;
            if c == '*' {
                acc = acc * t;
            } else {
                if t.is_zero() {
                    return self.err("division by zero");
                }
                acc = acc / t;
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<FieldElem, ParseError> {
        if self.peek_op() == Some('-') {
            self.k += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<FieldElem, ParseError> {
        let base = self.atom()?;
        if self.peek_op() != Some('^') {
            return Ok(base);
        }
        self.k += 1;
        let neg = if self.peek_op() == Some('-') {
            self.k += 1;
            true
        } else {
            false
        };
        let e = match self.toks.get(self.k) {
            Some((_, Tok::Num(r))) if r.is_integer() => {
                let e: i64 = r.to_integer().try_into().map_err(|_| ParseError {
                    pos: self.pos(),
                    msg: "exponent too large".into(),
                })?;
                e
            }
            _ => return self.err("expected integer exponent"),
        };
        self.k += 1;
        if neg && base.is_zero() {
            return self.err("division by zero");
        }
        Ok(base.pow(if neg { -e } else { e }))
    }

    fn atom(&mut self) -> Result<FieldElem, ParseError> {
        let Some((_, t)) = self.toks.get(self.k).cloned() else {
            return self.err("unexpected end of input");
        };
        self.k += 1;
        match t {
            Tok::Num(r) => self.constant(r),
            Tok::Imag(r) => self.imag(r),
            Tok::Ident('i') => self.imag(Rat::from_integer(1.into())),
            Tok::Ident(c) => {
                let v = match c {
                    'x' if matches!(self.field, Field::QX | Field::FpX(_) | Field::QXY) => self.field.gen(),
                    'y' if matches!(self.field, Field::QY | Field::QXY) => self.field.y(),
                    _ => None,
                };
                match v {
                    Some(v) => Ok(v),
                    None => {
                        self.k -= 1;
                        self.err(format!("variable {c} not in {}", self.field.name()))
                    }
                }
            }
            Tok::Op('(') => {
                let e = self.expr()?;
                if self.peek_op() != Some(')') {
                    return self.err("expected ')'");
                }
                self.k += 1;
                Ok(e)
            }
            Tok::Op(c) => {
                self.k -= 1;
                self.err(format!("unexpected '{c}'"))
            }
        }
    }

    fn imag(&mut self, r: Rat) -> Result<FieldElem, ParseError> {
        if *self.field != Field::QI {
            self.k -= 1;
            return self.err(format!("i is not in {}", self.field.name()));
        }
        Ok(FieldElem::Gauss(Rat::zero(), r))
    }
}

/// Parse an element of `field`.
pub fn parse_elem(field: &Field, s: &str) -> Result<FieldElem, ParseError> {
    let toks = lex(s)?;
    let mut p = Parser { toks, k: 0, field, len: s.len() };
    let e = p.expr()?;
    if p.k != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

pub fn show_upoly(p: &UPoly, var: &str) -> String {
    struct D<'a>(&'a UPoly, &'a str);
    impl fmt::Display for D<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            self.0.write(f, self.1)
        }
    }
    D(p, var).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rt(f: &Field, s: &str) {
        let e = parse_elem(f, s).unwrap();
        let printed = e.to_string();
        assert_eq!(parse_elem(f, &printed).unwrap(), e, "{s} -> {printed}");
        assert_eq!(parse_elem(f, &printed).unwrap().to_string(), printed);
    }

    #[test]
    fn roundtrips() {
        rt(&Field::Q, "-7/3");
        rt(&Field::QI, "1/2+3/4i");
        rt(&Field::QI, "-i");
        rt(&Field::QI, "2-i");
        rt(&Field::QX, "(x^2 - 1)/(3*x + 1)");
        rt(&Field::QX, "-x/(x+1)");
        rt(&Field::QY, "1/y^3");
        rt(&Field::FpX(5), "(3*x+1)/(2*x)");
        rt(&Field::QXY, "x^2*y^3 + x^3");
        rt(&Field::QXY, "(1/2*x - y)/(x*y + 1)");
    }

    #[test]
    fn gauss_literal() {
        let e = parse_elem(&Field::QI, "1/2+3/4i").unwrap();
        assert_eq!(e, FieldElem::Gauss(super::super::rat(1, 2), super::super::rat(3, 4)));
        assert_eq!(e.to_string(), "1/2+3/4i");
    }

    #[test]
    fn errors_carry_position() {
        let e = parse_elem(&Field::Q, "1 + x").unwrap_err();
        assert_eq!(e.pos, 4);
        assert!(parse_elem(&Field::QX, "(x+1").is_err());
    }
}
