use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::field::{Field, FieldElement};
use super::monomial::{Monomial, MonomialOrder};
use crate::error::{Error, Result};

/// The ambient polynomial ring `k[x_0, ..., x_{n-1}]`. Variable names are
/// for presentation only; variables are addressed by index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    names: Vec<String>,
    field: Field,
}

impl PolyRing {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>, field: Field) -> Arc<PolyRing> {
        Arc::new(PolyRing {
            names: names.into_iter().map(Into::into).collect(),
            field,
        })
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// A copy of this ring with an extra variable inserted at `index`. The
    /// name is made unique by appending primes.
    pub fn with_var(&self, index: usize, base: &str) -> Arc<PolyRing> {
        let mut name = base.to_string();
        while self.names.contains(&name) {
            name.push('\'');
        }
        let mut names = self.names.clone();
        names.insert(index, name);
        Arc::new(PolyRing {
            names,
            field: self.field.clone(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: FieldElement,
    pub mon: Monomial,
}

/// A multivariate polynomial. Terms are kept strictly descending in GrevLex
/// with nonzero coefficients; the zero polynomial has no terms.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<Term>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub(crate) fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Polynomial {
        Polynomial::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Arc<PolyRing>, c: FieldElement) -> Polynomial {
        Polynomial::monomial(ring, c, Monomial::one(ring.nvars()))
    }

    pub fn from_i64(ring: &Arc<PolyRing>, n: i64) -> Polynomial {
        Polynomial::constant(ring, ring.field().from_i64(n))
    }

    pub fn var(ring: &Arc<PolyRing>, index: usize) -> Polynomial {
        Polynomial::monomial(ring, ring.field().one(), Monomial::var(ring.nvars(), index))
    }

    pub fn monomial(ring: &Arc<PolyRing>, c: FieldElement, mon: Monomial) -> Polynomial {
        assert_eq!(mon.nvars(), ring.nvars(), "monomial arity does not match ring");
        let coeff = c
            .coerce(ring.field())
            .unwrap_or_else(|e| panic!("coefficient not in {}: {e}", ring.field()));
        let terms = if coeff.is_zero() {
            Vec::new()
        } else {
            vec![Term { coeff, mon }]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary terms: coefficients are coerced
    /// into the ring's field, like monomials are combined, zeros dropped.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: impl IntoIterator<Item = Term>) -> Polynomial {
        let mut acc: HashMap<Monomial, FieldElement> = HashMap::new();
        for t in terms {
            assert_eq!(t.mon.nvars(), ring.nvars(), "monomial arity does not match ring");
            let c = t
                .coeff
                .coerce(ring.field())
                .unwrap_or_else(|e| panic!("coefficient not in {}: {e}", ring.field()));
            match acc.get_mut(&t.mon) {
                Some(old) => *old = old.add(&c),
                None => {
                    acc.insert(t.mon, c);
                }
            }
        }
        Polynomial::from_sorted_unchecked(ring, sort_terms(acc))
    }

    pub(crate) fn from_sorted_unchecked(ring: &Arc<PolyRing>, terms: Vec<Term>) -> Polynomial {
        debug_assert!(terms
            .windows(2)
            .all(|w| MonomialOrder::GrevLex.cmp(&w[0].mon, &w[1].mon) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| !t.coeff.is_zero()));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.mon.is_one())
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|t| t.mon.degree())
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|t| t.mon.exponent(var)).max().unwrap_or(0)
    }

    pub fn contains_var(&self, var: usize) -> bool {
        self.terms.iter().any(|t| t.mon.exponent(var) > 0)
    }

    /// Leading term with respect to `order`.
    pub fn leading_term(&self, order: MonomialOrder) -> Option<&Term> {
        match order {
            MonomialOrder::GrevLex => self.terms.first(),
            _ => self.terms.iter().max_by(|a, b| order.cmp(&a.mon, &b.mon)),
        }
    }

    pub fn coefficient(&self, mon: &Monomial) -> FieldElement {
        self.terms
            .iter()
            .find(|t| &t.mon == mon)
            .map(|t| t.coeff.clone())
            .unwrap_or_else(|| self.ring.field().zero())
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::Context(format!(
                "polynomials live in different rings ({:?} over {} vs {:?} over {})",
                self.ring.names, self.ring.field, other.ring.names, other.ring.field
            )))
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.combine(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.combine(other, true))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let mut acc: HashMap<Monomial, FieldElement> = HashMap::with_capacity(self.len() * other.len());
        for a in &self.terms {
            for b in &other.terms {
                let mon = a.mon.mul(&b.mon);
                let c = a.coeff.mul(&b.coeff);
                match acc.get_mut(&mon) {
                    Some(old) => *old = old.add(&c),
                    None => {
                        acc.insert(mon, c);
                    }
                }
            }
        }
        Ok(Polynomial::from_sorted_unchecked(&self.ring, sort_terms(acc)))
    }

    fn combine(&self, other: &Polynomial, subtract: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let sign = |c: &FieldElement| if subtract { c.neg() } else { c.clone() };
        while i < a.len() && j < b.len() {
            match MonomialOrder::GrevLex.cmp(&a[i].mon, &b[j].mon) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term {
                        coeff: sign(&b[j].coeff),
                        mon: b[j].mon.clone(),
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if subtract {
                        a[i].coeff.sub(&b[j].coeff)
                    } else {
                        a[i].coeff.add(&b[j].coeff)
                    };
                    if !c.is_zero() {
                        out.push(Term {
                            coeff: c,
                            mon: a[i].mon.clone(),
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|t| Term {
            coeff: sign(&t.coeff),
            mon: t.mon.clone(),
        }));
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: t.coeff.mul(c),
                mon: t.mon.clone(),
            })
            .collect();
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn mul_term(&self, c: &FieldElement, mon: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        // Multiplication by a monomial preserves any monomial order.
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: t.coeff.mul(c),
                mon: t.mon.mul(mon),
            })
            .collect();
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Divides by the leading coefficient (GrevLex). Zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            Some(t) if !t.coeff.is_one() => self.scale(&t.coeff.inv().expect("nonzero")),
            _ => self.clone(),
        }
    }

    /// Re-embeds into `target`, which must be this ring with one variable
    /// inserted at `index`.
    pub fn insert_var(&self, target: &Arc<PolyRing>, index: usize) -> Polynomial {
        assert_eq!(target.nvars(), self.ring.nvars() + 1);
        let terms = self.terms.iter().map(|t| Term {
            coeff: t.coeff.clone(),
            mon: t.mon.insert_var(index),
        });
        Polynomial::from_terms(target, terms)
    }

    /// Inverse of [`Polynomial::insert_var`]; panics if the variable occurs.
    pub fn remove_var(&self, target: &Arc<PolyRing>, index: usize) -> Polynomial {
        assert_eq!(target.nvars() + 1, self.ring.nvars());
        let terms = self.terms.iter().map(|t| Term {
            coeff: t.coeff.clone(),
            mon: t.mon.remove_var(index),
        });
        Polynomial::from_terms(target, terms)
    }

    /// Reinterprets the polynomial in an equal ring (same names and field).
    pub fn with_ring(&self, ring: &Arc<PolyRing>) -> Result<Polynomial> {
        if !same_ring(&self.ring, ring) {
            return Err(Error::Context("rings differ".into()));
        }
        Ok(Polynomial {
            ring: ring.clone(),
            terms: self.terms.clone(),
        })
    }

    /// Writes the polynomial with the given variable names.
    pub fn fmt_with(&self, names: &[String], f: &mut impl fmt::Write) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            let c = if neg { t.coeff.neg() } else { t.coeff.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            if !c.is_one() || t.mon.is_one() {
                factors.push(c.to_string());
            }
            for (v, &e) in t.mon.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[v].clone()),
                    _ => factors.push(format!("{}^{}", names[v], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

fn sort_terms(acc: HashMap<Monomial, FieldElement>) -> Vec<Term> {
    let mut terms: Vec<Term> = acc
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(mon, coeff)| Term { coeff, mon })
        .collect();
    terms.sort_by(|a, b| MonomialOrder::GrevLex.cmp(&b.mon, &a.mon));
    terms
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Polynomial) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.fmt_with(&self.ring.names, &mut s)?;
        f.write_str(&s)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("ring mismatch in polynomial addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("ring mismatch in polynomial subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("ring mismatch in polynomial multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&self.ring.field().from_i64(-1))
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Exact `a op b`, failing if the operands live in different rings.
pub fn poly_arith(a: &Polynomial, b: &Polynomial, op: ArithOp) -> Result<Polynomial> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
    }
}

/// Multivariate division with remainder: returns `(q, r)` with
/// `f = sum q_i d_i + r`, where no term of `r` is divisible by a leading
/// monomial of any `d_i`. Divisors are tried in the given order.
pub fn poly_divmod(
    f: &Polynomial,
    divisors: &[Polynomial],
    order: MonomialOrder,
) -> Result<(Vec<Polynomial>, Polynomial)> {
    for d in divisors {
        f.check(d)?;
        if d.is_zero() {
            return Err(Error::Argument("division by the zero polynomial".into()));
        }
    }
    let ring = f.ring();
    let leads: Vec<Term> = divisors
        .iter()
        .map(|d| d.leading_term(order).expect("nonzero").clone())
        .collect();
    let mut quotients: Vec<Vec<Term>> = vec![Vec::new(); divisors.len()];
    let mut rem = Vec::new();
    let mut p = f.clone();
    while let Some(lt) = p.leading_term(order).cloned() {
        let hit = leads.iter().position(|l| l.mon.divides(&lt.mon));
        match hit {
            Some(i) => {
                let mon = leads[i].mon.quotient_of(&lt.mon).expect("divides");
                let coeff = lt.coeff.div(&leads[i].coeff).expect("nonzero");
                p = &p - &divisors[i].mul_term(&coeff, &mon);
                quotients[i].push(Term { coeff, mon });
            }
            None => {
                p = &p - &Polynomial::monomial(ring, lt.coeff.clone(), lt.mon.clone());
                rem.push(lt);
            }
        }
    }
    Ok((
        quotients.into_iter().map(|q| Polynomial::from_terms(ring, q)).collect(),
        Polynomial::from_terms(ring, rem),
    ))
}
