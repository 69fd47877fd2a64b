//! Text syntax for polynomials, ideals, matrices and ring descriptions.
//!
//! ```text
//! polynomial  z^2+x^3+y^3   -i*y^2   3/2*x*y   (1+2*i)*x   2x
//! ideal       (x, y^2, z)   (0)   (1)
//! matrix      [[0,-y];[x^2,0]]   or   [0,-y; x^2,0]
//! ring        x,y,z;QQi;z^2+x^2      (variables; field; defining polynomials)
//! ```
//!
//! Whitespace is insignificant. `i` is the imaginary unit unless the ring has
//! a variable named `i`. Division is only allowed by nonzero constants.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::poly::{Field, FieldElement, PolyRing, Polynomial};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

struct Lexer;

impl Lexer {
    fn run(src: &str) -> Result<Vec<(Tok, usize)>> {
        let chars: Vec<char> = src.chars().collect();
        let mut out = Vec::new();
        let mut k = 0;
        while k < chars.len() {
            let c = chars[k];
            let col = k + 1;
            if c.is_whitespace() {
                k += 1;
            } else if c.is_ascii_digit() {
                let start = k;
                while k < chars.len() && chars[k].is_ascii_digit() {
                    k += 1;
                }
                let digits: String = chars[start..k].iter().collect();
                out.push((Tok::Num(digits.parse().expect("digits")), col));
            } else if c.is_alphabetic() || c == '_' {
                let start = k;
                while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_' || chars[k] == '\'') {
                    k += 1;
                }
                out.push((Tok::Ident(chars[start..k].iter().collect()), col));
            } else if "+-*/^()[],;".contains(c) {
                out.push((Tok::Sym(c), col));
                k += 1;
            } else {
                return Err(Error::parse(col, format!("unexpected character `{c}`")));
            }
        }
        Ok(out)
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
    ring: &'a Arc<PolyRing>,
}

impl<'a> Parser<'a> {
    fn new(src: &str, ring: &'a Arc<PolyRing>) -> Result<Parser<'a>> {
        Ok(Parser {
            toks: Lexer::run(src)?,
            pos: 0,
            end_col: src.chars().count() + 1,
            ring,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(_, c)| *c).unwrap_or(self.end_col)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        let found = match self.peek() {
            None => "end of input".to_string(),
            Some(Tok::Num(n)) => format!("`{n}`"),
            Some(Tok::Ident(s)) => format!("`{s}`"),
            Some(Tok::Sym(c)) => format!("`{c}`"),
        };
        Error::parse(self.col(), format!("{}, found {found}", msg.into()))
    }

    fn finish(&self) -> Result<()> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = if self.eat('-') {
            -self.term()?
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

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.factor()?;
            } else if self.eat('/') {
                let col = self.col();
                let d = self.factor()?;
                if !d.is_constant() || d.is_zero() {
                    return Err(Error::parse(col, "division is only allowed by nonzero constants"));
                }
                let inv = d.terms()[0].coeff.inv().expect("nonzero");
                acc = acc.scale(&inv);
            } else if matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::Sym('('))) {
                acc = &acc * &self.factor()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    let e: u32 = (&n).try_into().map_err(|_| self.error("exponent too large"))?;
                    self.pos += 1;
                    Ok(base.pow(e))
                }
                _ => Err(self.error("expected a non-negative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let c = self
                    .ring
                    .field()
                    .from_rational(&BigRational::from_integer(n))
                    .map_err(|e| Error::parse(col, e.to_string()))?;
                Ok(Polynomial::constant(self.ring, c))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.identifier(&name, col)
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some(Tok::Sym('-')) => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            _ => Err(self.error("expected a number, variable or `(`")),
        }
    }

    fn identifier(&self, name: &str, col: usize) -> Result<Polynomial> {
        if let Some(v) = self.ring.var_index(name) {
            return Ok(Polynomial::var(self.ring, v));
        }
        // `xy` or `ix` style products of one-letter names.
        let mut acc = Polynomial::one(self.ring);
        for (k, ch) in name.chars().enumerate() {
            let s = ch.to_string();
            let factor = if let Some(v) = self.ring.var_index(&s) {
                Polynomial::var(self.ring, v)
            } else if ch == 'i' {
                let i =
                    self.ring.field().imaginary_unit().ok_or_else(|| {
                        Error::parse(col + k, format!("`i` is not available over {}", self.ring.field()))
                    })?;
                Polynomial::constant(self.ring, i)
            } else {
                return Err(Error::parse(col, format!("unknown variable `{name}`")));
            };
            acc = &acc * &factor;
        }
        Ok(acc)
    }

    fn list(&mut self, open: char, close: char, sep: char) -> Result<Vec<Polynomial>> {
        self.expect(open)?;
        let mut items = Vec::new();
        if self.eat(close) {
            return Ok(items);
        }
        loop {
            items.push(self.expr()?);
            if self.eat(close) {
                return Ok(items);
            }
            self.expect(sep)?;
        }
    }

    fn matrix(&mut self) -> Result<Vec<Vec<Polynomial>>> {
        self.expect('[')?;
        let mut rows = Vec::new();
        if self.peek() == Some(&Tok::Sym('[')) {
            loop {
                rows.push(self.list('[', ']', ',')?);
                if self.eat(']') {
                    break;
                }
                if !self.eat(';') {
                    self.expect(',')?;
                }
            }
        } else {
            let mut row = Vec::new();
            loop {
                row.push(self.expr()?);
                if self.eat(',') {
                    continue;
                }
                rows.push(std::mem::take(&mut row));
                if self.eat(']') {
                    break;
                }
                self.expect(';')?;
            }
        }
        Ok(rows)
    }
}

pub fn parse_polynomial(src: &str, ring: &Arc<PolyRing>) -> Result<Polynomial> {
    let mut p = Parser::new(src, ring)?;
    let f = p.expr()?;
    p.finish()?;
    Ok(f)
}

/// Comma-separated polynomials without brackets; empty input gives an empty
/// list.
pub fn parse_polynomial_list(src: &str, ring: &Arc<PolyRing>) -> Result<Vec<Polynomial>> {
    let mut p = Parser::new(src, ring)?;
    let mut items = Vec::new();
    if p.peek().is_none() {
        return Ok(items);
    }
    loop {
        items.push(p.expr()?);
        if p.peek().is_none() {
            return Ok(items);
        }
        p.expect(',')?;
    }
}

/// Parses `(g1, ..., gk)` into its generator list.
pub fn parse_ideal_generators(src: &str, ring: &Arc<PolyRing>) -> Result<Vec<Polynomial>> {
    let mut p = Parser::new(src, ring)?;
    let gens = p.list('(', ')', ',')?;
    p.finish()?;
    Ok(gens)
}

pub fn parse_matrix(src: &str, ring: &Arc<PolyRing>) -> Result<PolyMatrix> {
    let mut p = Parser::new(src, ring)?;
    let start = p.col();
    let rows = p.matrix()?;
    p.finish()?;
    PolyMatrix::from_rows(ring, rows).map_err(|e| Error::parse(start, e.to_string()))
}

/// Parses `vars;field;defining polynomials`. The field part may be empty
/// (defaults to QQ) and so may the defining list (the polynomial ring).
pub fn parse_ring_spec(src: &str) -> Result<(Arc<PolyRing>, Vec<Polynomial>)> {
    let parts: Vec<&str> = src.splitn(3, ';').collect();
    let names: Vec<String> = parts[0]
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect();
    if names.is_empty() {
        return Err(Error::parse(1, "ring has no variables"));
    }
    for (k, n) in names.iter().enumerate() {
        if !n.chars().next().is_some_and(char::is_alphabetic)
            || !n.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
        {
            return Err(Error::parse(1, format!("bad variable name `{n}`")));
        }
        if names[..k].contains(n) {
            return Err(Error::parse(1, format!("duplicate variable `{n}`")));
        }
    }
    let field_col = parts[0].chars().count() + 2;
    let field = match parts.get(1).map(|s| s.trim()) {
        None | Some("") => Field::Rational,
        Some(s) => s.parse().map_err(|e: Error| Error::parse(field_col, e.to_string()))?,
    };
    let ring = PolyRing::new(names, field);
    let gens = match parts.get(2) {
        None => Vec::new(),
        Some(s) => {
            let offset = parts[0].chars().count() + parts[1].chars().count() + 2;
            parse_polynomial_list(s, &ring).map_err(|e| e.at_line(1, offset))?
        }
    };
    Ok((ring, gens))
}

/// Builds a field element from a rational `num/den`, coerced into `field`.
pub fn rational_in(field: &Field, num: i64, den: i64) -> Result<FieldElement> {
    field.from_rational(&BigRational::new(num.into(), den.into()))
}
