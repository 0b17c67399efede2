//! Canonical text form of polynomials.
//!
//! Output: terms in descending graded-lex order, `coeff*var^e*...` with exact
//! rational coefficients (`num/den`).  Input accepts the same form plus
//! parentheses, decimals and unary signs, so fixture files can be written as
//! e.g. `(1-u^2)*(1+s)`.

use std::fmt;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::rat::{format_rat, parse_rat, Rat};

use super::{grlex_cmp, MultiPoly};

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Vec<u32>, &Rat)> = self.terms.iter().collect();
        terms.sort_by(|a, b| grlex_cmp(b.0, a.0));
        for (i, (m, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            let is_const = m.iter().all(|&e| e == 0);
            let mut wrote = false;
            if !mag.is_one() || is_const {
                write!(f, "{}", format_rat(&mag))?;
                wrote = true;
            }
            for (v, &e) in self.vars.iter().zip(m.iter()) {
                if e == 0 {
                    continue;
                }
                if wrote {
                    write!(f, "*")?;
                }
                wrote = true;
                if e == 1 {
                    write!(f, "{v}")?;
                } else {
                    write!(f, "{v}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rat),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let bytes: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                toks.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                toks.push(Tok::Star);
                i += 1;
            }
            '/' => {
                toks.push(Tok::Slash);
                i += 1;
            }
            '^' => {
                toks.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                toks.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                toks.push(Tok::RParen);
                i += 1;
            }
            '0'..='9' | '.' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == '.') {
                    i += 1;
                }
                let lit: String = bytes[start..i].iter().collect();
                toks.push(Tok::Num(parse_rat(&lit)?));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_')
                {
                    i += 1;
                }
                toks.push(Tok::Ident(bytes[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            match t {
                Tok::Plus => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.factor()?;
        while let Some(t) = self.peek() {
            match t {
                Tok::Star => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Tok::Slash => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    let c = rhs.as_constant().ok_or_else(|| {
                        Error::Parse("division only by nonzero constants".into())
                    })?;
                    if c == Rat::from_integer(0.into()) {
                        return Err(Error::Parse("division by zero".into()));
                    }
                    acc = acc.scale(&(Rat::one() / c));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly> {
        let mut sign = Rat::one();
        while let Some(t) = self.peek() {
            match t {
                Tok::Minus => {
                    sign = -sign;
                    self.pos += 1;
                }
                Tok::Plus => {
                    self.pos += 1;
                }
                _ => break,
            }
        }
        let mut base = self.primary()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.next() {
                Some(Tok::Num(n)) => {
                    use num_traits::ToPrimitive;
                    let e = if n.is_integer() {
                        n.to_integer().to_u32()
                    } else {
                        None
                    };
                    let e =
                        e.ok_or_else(|| Error::Parse("exponent must be a small nonnegative integer".into()))?;
                    base = base.pow(e);
                }
                _ => return Err(Error::Parse("expected integer exponent after ^".into())),
            }
        }
        Ok(base.scale(&sign))
    }

    fn primary(&mut self) -> Result<MultiPoly> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(MultiPoly::constant(n)),
            Some(Tok::Ident(name)) => Ok(MultiPoly::var(&name)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(Error::Parse("missing closing parenthesis".into())),
                }
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

pub fn parse_poly(s: &str) -> Result<MultiPoly> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!(
            "trailing input at token {}",
            p.pos
        )));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_display() {
        let g = parse_poly("t*(1+v^2)*(v-1)").unwrap();
        let again = parse_poly(&g.to_string()).unwrap();
        assert_eq!(g, again);
        assert_eq!(g.to_string(), "t*v^3 - t*v^2 + t*v - t");
    }

    #[test]
    fn rational_coeffs() {
        let g = parse_poly("-1/16*v^2 + 0.5*t - 3").unwrap();
        assert_eq!(g.to_string(), "-1/16*v^2 + 1/2*t - 3");
    }

    #[test]
    fn parse_errors() {
        assert!(parse_poly("").is_err());
        assert!(parse_poly("x +").is_err());
        assert!(parse_poly("x / y").is_err());
        assert!(parse_poly("(x").is_err());
    }
}
