//! Integer expressions used by catalog templates: `+ - * /` (floor division),
//! `min`, `max`, parentheses, comparisons, `even(e)`, `odd(e)` and `and`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

pub type Env = BTreeMap<String, i64>;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Ident(String),
    Op(&'static str),
}

fn lex(src: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let s: String = chars[start..k].iter().collect();
            out.push(Tok::Num(s.parse().map_err(|_| bad(src, "number too large"))?));
        } else if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            out.push(Tok::Ident(chars[start..k].iter().collect()));
        } else {
            let two: String = chars[k..(k + 2).min(chars.len())].iter().collect();
            let op = ["<=", ">=", "==", "!="].into_iter().find(|op| *op == two);
            if let Some(op) = op {
                out.push(Tok::Op(op));
                k += 2;
            } else {
                let op = ["+", "-", "*", "/", "(", ")", ",", "<", ">"]
                    .into_iter()
                    .find(|op| op.starts_with(c))
                    .ok_or_else(|| bad(src, &format!("unexpected `{c}`")))?;
                out.push(Tok::Op(op));
                k += 1;
            }
        }
    }
    Ok(out)
}

fn bad(src: &str, msg: &str) -> Error {
    Error::Catalog(format!("in template `{src}`: {msg}"))
}

struct Eval<'a> {
    src: &'a str,
    toks: Vec<Tok>,
    pos: usize,
    env: &'a Env,
}

impl Eval<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Op(o)) if *o == op) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, op: &str) -> Result<()> {
        if self.eat(op) {
            Ok(())
        } else {
            Err(bad(self.src, &format!("expected `{op}`")))
        }
    }

    fn cond(&mut self) -> Result<bool> {
        let mut v = self.comparison()?;
        while self.peek() == Some(&Tok::Ident("and".into())) {
            self.pos += 1;
            let rhs = self.comparison()?;
            v = v && rhs;
        }
        Ok(v)
    }

    fn comparison(&mut self) -> Result<bool> {
        if let Some(Tok::Ident(f)) = self.peek() {
            if f == "even" || f == "odd" {
                let want = if f == "even" { 0 } else { 1 };
                self.pos += 1;
                self.expect("(")?;
                let v = self.expr()?;
                self.expect(")")?;
                return Ok(v.rem_euclid(2) == want);
            }
        }
        let a = self.expr()?;
        let op = match self.peek() {
            Some(Tok::Op(op)) if ["<", ">", "<=", ">=", "==", "!="].contains(op) => *op,
            _ => return Err(bad(self.src, "expected a comparison")),
        };
        self.pos += 1;
        let b = self.expr()?;
        Ok(match op {
            "<" => a < b,
            ">" => a > b,
            "<=" => a <= b,
            ">=" => a >= b,
            "==" => a == b,
            _ => a != b,
        })
    }

    fn expr(&mut self) -> Result<i64> {
        let mut v = self.term()?;
        loop {
            if self.eat("+") {
                v += self.term()?;
            } else if self.eat("-") {
                v -= self.term()?;
            } else {
                return Ok(v);
            }
        }
    }

    fn term(&mut self) -> Result<i64> {
        let mut v = self.atom()?;
        loop {
            if self.eat("*") {
                v *= self.atom()?;
            } else if self.eat("/") {
                let d = self.atom()?;
                if d == 0 {
                    return Err(bad(self.src, "division by zero"));
                }
                v = v.div_euclid(d);
            } else {
                return Ok(v);
            }
        }
    }

    fn atom(&mut self) -> Result<i64> {
        if self.eat("-") {
            return Ok(-self.atom()?);
        }
        if self.eat("(") {
            let v = self.expr()?;
            self.expect(")")?;
            return Ok(v);
        }
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(n)
            }
            Some(Tok::Ident(name)) if name == "min" || name == "max" => {
                self.pos += 1;
                self.expect("(")?;
                let a = self.expr()?;
                self.expect(",")?;
                let b = self.expr()?;
                self.expect(")")?;
                Ok(if name == "min" { a.min(b) } else { a.max(b) })
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.env
                    .get(&name)
                    .copied()
                    .ok_or_else(|| bad(self.src, &format!("unknown parameter `{name}`")))
            }
            _ => Err(bad(self.src, "expected a value")),
        }
    }

    fn finish(&self) -> Result<()> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            Err(bad(self.src, "trailing input"))
        }
    }
}

pub fn eval(src: &str, env: &Env) -> Result<i64> {
    let mut e = Eval {
        src,
        toks: lex(src)?,
        pos: 0,
        env,
    };
    let v = e.expr()?;
    e.finish()?;
    Ok(v)
}

pub fn eval_cond(src: &str, env: &Env) -> Result<bool> {
    let mut e = Eval {
        src,
        toks: lex(src)?,
        pos: 0,
        env,
    };
    let v = e.cond()?;
    e.finish()?;
    Ok(v)
}

/// Replaces every `{expr}` in `text` by its value.
pub fn expand(text: &str, env: &Env) -> Result<String> {
    let mut out = String::with_capacity(text.len());
    let mut rest = text;
    while let Some(open) = rest.find('{') {
        out.push_str(&rest[..open]);
        let close = rest[open..].find('}').ok_or_else(|| bad(text, "unclosed `{`"))?;
        let v = eval(&rest[open + 1..open + close], env)?;
        out.push_str(&v.to_string());
        rest = &rest[open + close + 1..];
    }
    out.push_str(rest);
    Ok(out)
}
