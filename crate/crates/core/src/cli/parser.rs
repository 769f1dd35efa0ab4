//! Recursive-descent parser for skew-polynomial expressions.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := atom ('^' uint)?
//! atom   := uint | 'x' | 't' | 'w' | 'F' | '(' expr ')'
//! ```
//!
//! `*` is the skew product, evaluated left to right. `/` divides on the right
//! by an invertible constant, which is what printed rational coefficients
//! like `(1/x^2)*F` need.

use crate::error::{Error, Result};
use crate::fields::Ring;
use crate::skew::{SkewPoly, SkewRing};

const MAX_EXPONENT: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Num(u64),
    Ident(char),
    Op(char),
    End,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    /// Next token and the position where it starts.
    fn next(&mut self) -> Result<(Tok, usize)> {
        self.skip_ws();
        let start = self.pos;
        let Some(&c) = self.src.get(self.pos) else {
            return Ok((Tok::End, start));
        };
        if c.is_ascii_digit() {
            let mut n: u64 = 0;
            while let Some(&d) = self.src.get(self.pos).filter(|d| d.is_ascii_digit()) {
                n = n
                    .checked_mul(10)
                    .and_then(|n| n.checked_add((d - b'0') as u64))
                    .ok_or_else(|| syntax(start, "integer literal too large"))?;
                self.pos += 1;
            }
            return Ok((Tok::Num(n), start));
        }
        self.pos += 1;
        match c {
            b'+' | b'-' | b'*' | b'/' | b'^' | b'(' | b')' => Ok((Tok::Op(c as char), start)),
            c if c.is_ascii_alphabetic() => Ok((Tok::Ident(c as char), start)),
            _ => {
                let ch = std::str::from_utf8(&self.src[start..])
                    .ok()
                    .and_then(|s| s.chars().next())
                    .unwrap_or('?');
                Err(syntax(start, &format!("unexpected character '{ch}'")))
            }
        }
    }
}

fn syntax(pos: usize, msg: &str) -> Error {
    Error::Syntax {
        pos,
        msg: msg.to_string(),
    }
}

struct Parser<'a, R: Ring> {
    sr: &'a SkewRing<R>,
    lex: Lexer<'a>,
    tok: Tok,
    at: usize,
}

impl<'a, R: Ring> Parser<'a, R> {
    fn bump(&mut self) -> Result<()> {
        let (t, at) = self.lex.next()?;
        self.tok = t;
        self.at = at;
        Ok(())
    }

    fn expr(&mut self) -> Result<SkewPoly<R::Elem>> {
        let negate = self.tok == Tok::Op('-');
        if negate {
            self.bump()?;
        }
        let mut acc = self.term()?;
        if negate {
            acc = self.sr.neg(&acc);
        }
        while let Tok::Op(op @ ('+' | '-')) = self.tok {
            self.bump()?;
            let rhs = self.term()?;
            acc = if op == '+' {
                self.sr.add(&acc, &rhs)
            } else {
                self.sr.sub(&acc, &rhs)
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<SkewPoly<R::Elem>> {
        let mut acc = self.factor()?;
        while let Tok::Op(op @ ('*' | '/')) = self.tok {
            let at = self.at;
            self.bump()?;
            let rhs = self.factor()?;
            acc = if op == '*' {
                self.sr.skew_mul(&acc, &rhs)?
            } else {
                self.divide(&acc, &rhs, at)?
            };
        }
        Ok(acc)
    }

    fn divide(&self, a: &SkewPoly<R::Elem>, b: &SkewPoly<R::Elem>, at: usize) -> Result<SkewPoly<R::Elem>> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if b.degree().finite() != Some(0) {
            return Err(syntax(at, "can only divide by a constant"));
        }
        let inv = self.sr.base().inv(&self.sr.coeff(b, 0))?;
        self.sr.skew_mul(a, &self.sr.constant(inv))
    }

    fn factor(&mut self) -> Result<SkewPoly<R::Elem>> {
        let base = self.atom()?;
        if self.tok != Tok::Op('^') {
            return Ok(base);
        }
        self.bump()?;
        match self.tok {
            Tok::Num(n) if n <= MAX_EXPONENT => {
                self.bump()?;
                Ok(self.sr.pow(&base, n as u32))
            }
            Tok::Num(_) => Err(syntax(self.at, &format!("exponent exceeds {MAX_EXPONENT}"))),
            _ => Err(syntax(self.at, "expected an exponent")),
        }
    }

    fn atom(&mut self) -> Result<SkewPoly<R::Elem>> {
        let at = self.at;
        match self.tok {
            Tok::Num(n) => {
                self.bump()?;
                let p = self.sr.base().characteristic() as u64;
                Ok(self.sr.constant(self.sr.base().from_int((n % p) as i64)))
            }
            Tok::Ident('F') => {
                self.bump()?;
                Ok(self.sr.f_pow(1))
            }
            Tok::Ident(c) => {
                self.bump()?;
                let name = c.to_string();
                match (matches!(c, 'x' | 't' | 'w'), self.sr.base().symbol(&name)) {
                    (true, Some(v)) => Ok(self.sr.constant(v)),
                    (true, None) => Err(Error::UnknownSymbol(name)),
                    (false, _) => Err(syntax(at, &format!("unknown identifier '{c}'"))),
                }
            }
            Tok::Op('(') => {
                self.bump()?;
                let e = self.expr()?;
                if self.tok != Tok::Op(')') {
                    return Err(syntax(self.at, "expected ')'"));
                }
                self.bump()?;
                Ok(e)
            }
            Tok::End => Err(syntax(at, "unexpected end of input")),
            Tok::Op(c) => Err(syntax(at, &format!("unexpected '{c}'"))),
        }
    }
}

/// Parses `text` into normal form `Σ r_i F^i`.
pub fn parse_skew_expr<R: Ring>(sr: &SkewRing<R>, text: &str) -> Result<SkewPoly<R::Elem>> {
    let mut p = Parser {
        sr,
        lex: Lexer {
            src: text.as_bytes(),
            pos: 0,
        },
        tok: Tok::End,
        at: 0,
    };
    p.bump()?;
    let e = p.expr()?;
    if p.tok != Tok::End {
        return Err(syntax(p.at, "trailing input"));
    }
    Ok(e)
}

/// Parses an expression that must be a constant of the base ring.
pub fn parse_scalar<R: Ring>(sr: &SkewRing<R>, text: &str) -> Result<R::Elem> {
    let e = parse_skew_expr(sr, text)?;
    match e.degree().finite() {
        None => Ok(sr.base().zero()),
        Some(0) => Ok(sr.coeff(&e, 0)),
        Some(_) => Err(Error::InvalidParams(format!("'{text}' is not a scalar"))),
    }
}
