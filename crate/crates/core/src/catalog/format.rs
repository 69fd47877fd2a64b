//! Parser for catalog files.
//!
//! A file describes one family. Blank lines and `#` comments are ignored.
//! Header lines are `key: value`:
//!
//! ```text
//! family: NAME                 required
//! description: TEXT
//! ring: x, y, z                variable names, required
//! field: QQ | QQi | Fp:p       default coefficient field
//! requires: i                  the matrices use a square root of -1
//! exclude-characteristic: 2, 3 characteristics the family is not valid in
//! param: n                     one line per integer parameter
//! domain: COND                 constraint on the parameters (repeatable)
//! grid: n = 1..6 | n = 3, 5    acceptance grid for a parameter
//! equation: POLY               the defining polynomial, required
//! z: VAR                       distinguished variable for z-form modules
//! g: POLY                      equation = z^2 + g
//! ```
//!
//! Modules follow as blocks:
//!
//! ```text
//! module NAME [for VAR in EXPR..EXPR] [if COND]
//!   phi: MATRIX                z-form module coker(z id - phi)
//!   presentation: MATRIX       or a presentation matrix
//!   tau: IDEAL                 claimed trace ideal (optional)
//! ```
//!
//! and the claims `mcm: IDEAL` and `claim: NAME & NAME ... = IDEAL [if COND]`.
//! A line without a key continues the previous value. Inside names,
//! matrices and ideals, `{EXPR}` is replaced by the value of an integer
//! expression in the parameters and the loop variable (see
//! [`super::template`]); ranges are inclusive.

use crate::error::{Error, Result};
use crate::poly::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleBody {
    Phi(String),
    Presentation(String),
}

#[derive(Clone, Debug)]
pub struct ModuleTemplate {
    pub name: String,
    /// `(variable, low, high)`, inclusive.
    pub range: Option<(String, String, String)>,
    pub condition: Option<String>,
    pub body: ModuleBody,
    pub tau: Option<String>,
    pub line: usize,
}

#[derive(Clone, Debug)]
pub struct ClaimTemplate {
    pub modules: Vec<String>,
    pub ideal: String,
    pub condition: Option<String>,
    pub line: usize,
}

#[derive(Clone, Debug)]
pub struct FamilySpec {
    pub name: String,
    pub description: String,
    pub variables: Vec<String>,
    pub field: Field,
    pub requires_i: bool,
    pub excluded_characteristics: Vec<u64>,
    pub params: Vec<String>,
    pub domain: Vec<String>,
    pub grid: Vec<(String, Vec<i64>)>,
    pub equation: String,
    pub z: Option<String>,
    pub g: Option<String>,
    pub modules: Vec<ModuleTemplate>,
    pub mcm: Option<String>,
    pub claims: Vec<ClaimTemplate>,
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Catalog(format!("line {line}: {}", msg.into()))
}

/// Logical lines: comments stripped, continuations joined, with the line
/// number where each starts and whether it was indented.
fn logical_lines(text: &str) -> Vec<(usize, bool, String)> {
    let mut out: Vec<(usize, bool, String)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indented = line.starts_with(char::is_whitespace);
        let has_key = trimmed.starts_with("module ") || key_of(trimmed).is_some();
        match out.last_mut() {
            Some(last) if !has_key => {
                last.2.push(' ');
                last.2.push_str(trimmed);
            }
            _ => out.push((k + 1, indented, trimmed.to_string())),
        }
    }
    out
}

fn key_of(line: &str) -> Option<(&str, &str)> {
    let (key, value) = line.split_once(':')?;
    let key = key.trim();
    if !key.is_empty() && key.chars().all(|c| c.is_ascii_lowercase() || c == '-') {
        Some((key, value.trim()))
    } else {
        None
    }
}

fn parse_grid(line: usize, value: &str) -> Result<(String, Vec<i64>)> {
    let (name, values) = value
        .split_once('=')
        .ok_or_else(|| err(line, "grid needs `name = values`"))?;
    let num = |s: &str| {
        s.trim()
            .parse::<i64>()
            .map_err(|_| err(line, format!("bad grid value `{}`", s.trim())))
    };
    let values = if let Some((lo, hi)) = values.split_once("..") {
        (num(lo)?..=num(hi)?).collect()
    } else {
        values.split(',').map(num).collect::<Result<_>>()?
    };
    Ok((name.trim().to_string(), values))
}

type Range = (String, String, String);

fn parse_module_header(line: usize, rest: &str) -> Result<(String, Option<Range>, Option<String>)> {
    let (head, condition) = match rest.split_once(" if ") {
        Some((h, c)) => (h.trim(), Some(c.trim().to_string())),
        None => (rest.trim(), None),
    };
    let (name, range) = match head.split_once(" for ") {
        Some((name, r)) => {
            let (var, bounds) = r
                .split_once(" in ")
                .ok_or_else(|| err(line, "expected `for VAR in A..B`"))?;
            let (lo, hi) = bounds
                .split_once("..")
                .ok_or_else(|| err(line, "expected a range `A..B`"))?;
            (
                name.trim(),
                Some((var.trim().to_string(), lo.trim().to_string(), hi.trim().to_string())),
            )
        }
        None => (head, None),
    };
    if name.is_empty() {
        return Err(err(line, "module needs a name"));
    }
    Ok((name.to_string(), range, condition))
}

fn parse_claim(line: usize, value: &str) -> Result<ClaimTemplate> {
    let (lhs, rhs) = value
        .split_once('=')
        .ok_or_else(|| err(line, "claim needs `A & B = IDEAL`"))?;
    let (ideal, condition) = match rhs.rsplit_once(" if ") {
        Some((i, c)) => (i.trim().to_string(), Some(c.trim().to_string())),
        None => (rhs.trim().to_string(), None),
    };
    let modules = lhs.split('&').map(|m| m.trim().to_string()).collect();
    Ok(ClaimTemplate {
        modules,
        ideal,
        condition,
        line,
    })
}

pub fn parse_family(text: &str) -> Result<FamilySpec> {
    let mut spec = FamilySpec {
        name: String::new(),
        description: String::new(),
        variables: Vec::new(),
        field: Field::Rational,
        requires_i: false,
        excluded_characteristics: Vec::new(),
        params: Vec::new(),
        domain: Vec::new(),
        grid: Vec::new(),
        equation: String::new(),
        z: None,
        g: None,
        modules: Vec::new(),
        mcm: None,
        claims: Vec::new(),
    };
    struct Open {
        line: usize,
        name: String,
        range: Option<(String, String, String)>,
        condition: Option<String>,
        body: Option<ModuleBody>,
        tau: Option<String>,
    }
    let mut open: Option<Open> = None;
    let close = |open: &mut Option<Open>, spec: &mut FamilySpec| -> Result<()> {
        if let Some(m) = open.take() {
            let body = m
                .body
                .ok_or_else(|| err(m.line, format!("module {} has no phi or presentation", m.name)))?;
            spec.modules.push(ModuleTemplate {
                name: m.name,
                range: m.range,
                condition: m.condition,
                body,
                tau: m.tau,
                line: m.line,
            });
        }
        Ok(())
    };

    for (line, indented, text) in logical_lines(text) {
        if let Some(rest) = text.strip_prefix("module ") {
            close(&mut open, &mut spec)?;
            let (name, range, condition) = parse_module_header(line, rest)?;
            open = Some(Open {
                line,
                name,
                range,
                condition,
                body: None,
                tau: None,
            });
            continue;
        }
        let (key, value) = key_of(&text).ok_or_else(|| err(line, format!("expected `key: value`, got `{text}`")))?;
        if indented {
            let m = open
                .as_mut()
                .ok_or_else(|| err(line, "indented line outside a module"))?;
            match key {
                "phi" | "presentation" if m.body.is_some() => {
                    return Err(err(line, format!("module {} already has a matrix", m.name)))
                }
                "phi" => m.body = Some(ModuleBody::Phi(value.to_string())),
                "presentation" => m.body = Some(ModuleBody::Presentation(value.to_string())),
                "tau" => m.tau = Some(value.to_string()),
                _ => return Err(err(line, format!("unknown module key `{key}`"))),
            }
            continue;
        }
        close(&mut open, &mut spec)?;
        match key {
            "family" => spec.name = value.to_string(),
            "description" => spec.description = value.to_string(),
            "ring" => {
                spec.variables = value
                    .split(',')
                    .map(|v| v.trim().to_string())
                    .filter(|v| !v.is_empty())
                    .collect()
            }
            "field" => spec.field = value.parse().map_err(|e: Error| err(line, e.to_string()))?,
            "requires" => match value {
                "i" => spec.requires_i = true,
                other => return Err(err(line, format!("unknown requirement `{other}`"))),
            },
            "exclude-characteristic" => {
                for p in value.split(',') {
                    let p = p
                        .trim()
                        .parse()
                        .map_err(|_| err(line, format!("bad characteristic `{}`", p.trim())))?;
                    spec.excluded_characteristics.push(p);
                }
            }
            "param" => spec.params.push(value.to_string()),
            "domain" => spec.domain.push(value.to_string()),
            "grid" => spec.grid.push(parse_grid(line, value)?),
            "equation" => spec.equation = value.to_string(),
            "z" => spec.z = Some(value.to_string()),
            "g" => spec.g = Some(value.to_string()),
            "mcm" => spec.mcm = Some(value.to_string()),
            "claim" => spec.claims.push(parse_claim(line, value)?),
            _ => return Err(err(line, format!("unknown key `{key}`"))),
        }
    }
    close(&mut open, &mut spec)?;

    if spec.name.is_empty() {
        return Err(err(1, "missing `family:`"));
    }
    if spec.variables.is_empty() {
        return Err(err(1, format!("{}: missing `ring:`", spec.name)));
    }
    if spec.equation.is_empty() {
        return Err(err(1, format!("{}: missing `equation:`", spec.name)));
    }
    let zform = spec.modules.iter().any(|m| matches!(m.body, ModuleBody::Phi(_)));
    if zform && (spec.z.is_none() || spec.g.is_none()) {
        return Err(err(1, format!("{}: phi modules need `z:` and `g:`", spec.name)));
    }
    for (name, _) in &spec.grid {
        if !spec.params.contains(name) {
            return Err(err(1, format!("{}: grid for undeclared parameter `{name}`", spec.name)));
        }
    }
    Ok(spec)
}
