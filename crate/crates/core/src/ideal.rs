//! Ideals of a quotient ring `S/Q`, handled through their preimages in the
//! ambient polynomial ring `S`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{buchberger_bounded, normal_form, tagged_syzygies, FreeModuleVector, ModuleOrder};
use crate::parse::{parse_ideal_generators, parse_polynomial, parse_ring_spec};
use crate::poly::polynomial::same_ring;
use crate::poly::{MonomialOrder, PolyRing, Polynomial};

const ORDER: MonomialOrder = MonomialOrder::GrevLex;

/// The ring `S/Q` with `S = k[x_1..x_n]`. An empty `Q` is the polynomial
/// ring itself.
#[derive(Debug)]
pub struct RingContext {
    ring: Arc<PolyRing>,
    defining: Vec<Polynomial>,
    defining_gb: Vec<Polynomial>,
    max_degree: Option<u32>,
}

impl RingContext {
    pub fn new(ring: &Arc<PolyRing>, defining: Vec<Polynomial>) -> Result<Arc<RingContext>> {
        RingContext::with_max_degree(ring, defining, None)
    }

    /// Like [`RingContext::new`], with every Groebner computation in this
    /// ring aborting once an S-pair exceeds `max_degree`.
    pub fn with_max_degree(
        ring: &Arc<PolyRing>,
        defining: Vec<Polynomial>,
        max_degree: Option<u32>,
    ) -> Result<Arc<RingContext>> {
        if defining.iter().any(|q| !same_ring(q.ring(), ring)) {
            return Err(Error::Context("defining polynomial from another ring".into()));
        }
        let defining_gb = buchberger_bounded(&defining, ORDER, max_degree)?;
        Ok(Arc::new(RingContext {
            ring: ring.clone(),
            defining,
            defining_gb,
            max_degree,
        }))
    }

    /// Parses `vars;field;q1,q2,...` (see [`parse_ring_spec`]).
    pub fn parse(spec: &str) -> Result<Arc<RingContext>> {
        let (ring, defining) = parse_ring_spec(spec)?;
        RingContext::new(&ring, defining)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn defining(&self) -> &[Polynomial] {
        &self.defining
    }

    pub fn defining_gb(&self) -> &[Polynomial] {
        &self.defining_gb
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.max_degree
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.defining_gb.is_empty()
    }

    /// Canonical representative of `f` modulo `Q`.
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        normal_form(f, &self.defining_gb, ORDER)
    }

    pub fn poly(&self, src: &str) -> Result<Polynomial> {
        parse_polynomial(src, &self.ring)
    }

    /// Parses `(g1, ..., gk)` as an ideal of this ring.
    pub fn ideal(self: &Arc<Self>, src: &str) -> Result<Ideal> {
        let gens = parse_ideal_generators(src, &self.ring)?;
        Ideal::new(self, gens)
    }

    fn same(&self, other: &RingContext) -> bool {
        std::ptr::eq(self, other) || (same_ring(&self.ring, &other.ring) && self.defining_gb == other.defining_gb)
    }

    fn groebner(&self, gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
        buchberger_bounded(gens, ORDER, self.max_degree)
    }
}

/// An ideal of `S/Q`. Stores the reduced GrevLex Groebner basis of its full
/// preimage `I + Q` in `S`, so equal ideals have equal bases.
#[derive(Clone, Debug)]
pub struct Ideal {
    ctx: Arc<RingContext>,
    generators: Vec<Polynomial>,
    gb: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(ctx: &Arc<RingContext>, generators: Vec<Polynomial>) -> Result<Ideal> {
        if generators.iter().any(|g| !same_ring(g.ring(), &ctx.ring)) {
            return Err(Error::Context("generator from another ring".into()));
        }
        let mut all = generators.clone();
        all.extend(ctx.defining_gb.iter().cloned());
        let gb = ctx.groebner(&all)?;
        Ok(Ideal {
            ctx: ctx.clone(),
            generators,
            gb,
        })
    }

    pub fn zero(ctx: &Arc<RingContext>) -> Ideal {
        Ideal {
            ctx: ctx.clone(),
            generators: Vec::new(),
            gb: ctx.defining_gb.clone(),
        }
    }

    pub fn unit(ctx: &Arc<RingContext>) -> Ideal {
        let one = Polynomial::one(&ctx.ring);
        Ideal {
            ctx: ctx.clone(),
            generators: vec![one.clone()],
            gb: vec![one],
        }
    }

    pub fn context(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    /// The generators this ideal was built from.
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Reduced GrevLex Groebner basis of the preimage `I + Q`.
    pub fn groebner_basis(&self) -> &[Polynomial] {
        &self.gb
    }

    /// Canonical generators: the basis elements that are nonzero in `S/Q`,
    /// ordered by their leading monomials compared lexicographically, with
    /// elements generated by the others modulo `Q` dropped (last first).
    pub fn canonical_generators(&self) -> Vec<Polynomial> {
        let mut out: Vec<Polynomial> = self
            .gb
            .iter()
            .filter(|g| !self.ctx.reduce(g).is_zero())
            .cloned()
            .collect();
        out.sort_by(|a, b| {
            let la = &a.leading_term(ORDER).expect("nonzero").mon;
            let lb = &b.leading_term(ORDER).expect("nonzero").mon;
            MonomialOrder::Lex.cmp(lb, la).then_with(|| ORDER.cmp(lb, la))
        });
        if self.ctx.is_polynomial_ring() {
            return out;
        }
        for k in (0..out.len()).rev() {
            let mut others: Vec<Polynomial> = out
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, g)| g.clone())
                .collect();
            others.extend(self.ctx.defining_gb.iter().cloned());
            let Ok(gb) = self.ctx.groebner(&others) else { continue };
            if normal_form(&out[k], &gb, ORDER).is_zero() {
                out.remove(k);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.gb == self.ctx.defining_gb
    }

    pub fn is_unit(&self) -> bool {
        self.gb.len() == 1 && self.gb[0].is_constant()
    }

    fn check(&self, other: &Ideal) -> Result<()> {
        if self.ctx.same(&other.ctx) {
            Ok(())
        } else {
            Err(Error::Context("ideals over different rings".into()))
        }
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        let mut all = self.gb.clone();
        all.extend(other.gb.iter().cloned());
        let gb = self.ctx.groebner(&all)?;
        Ok(Ideal {
            ctx: self.ctx.clone(),
            generators: gens,
            gb,
        })
    }

    /// `I ∩ J`, by eliminating `t` from `t I' + (1 - t) J'` where `I'`, `J'`
    /// are the preimages in `S`.
    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        if self.is_unit() {
            return Ok(other.clone());
        }
        if other.is_unit() {
            return Ok(self.clone());
        }
        let ring = &self.ctx.ring;
        let big = ring.with_var(0, "t");
        let t = Polynomial::var(&big, 0);
        let one_minus_t = &Polynomial::one(&big) - &t;
        let mut gens = Vec::with_capacity(self.gb.len() + other.gb.len());
        gens.extend(self.gb.iter().map(|f| &t * &f.insert_var(&big, 0)));
        gens.extend(other.gb.iter().map(|f| &one_minus_t * &f.insert_var(&big, 0)));
        let elim = buchberger_bounded(&gens, MonomialOrder::BlockElim { k: 1 }, self.ctx.max_degree)?;
        let kept: Vec<Polynomial> = elim
            .iter()
            .filter(|f| !f.contains_var(0))
            .map(|f| f.remove_var(ring, 0))
            .collect();
        let generators: Vec<Polynomial> = kept
            .iter()
            .map(|f| self.ctx.reduce(f))
            .filter(|f| !f.is_zero())
            .collect();
        let gb = self.ctx.groebner(&kept)?;
        Ok(Ideal {
            ctx: self.ctx.clone(),
            generators,
            gb,
        })
    }

    /// `I : J = {r : r J ⊆ I}`, as the intersection of `I : g` over the
    /// generators `g` of `J`. Each `I : g` is the projection onto the first
    /// coordinate of the syzygies of `(g, I')`.
    pub fn quotient(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        let mut acc = Ideal::unit(&self.ctx);
        for g in &other.generators {
            let g = self.ctx.reduce(g);
            if g.is_zero() || self.contains_unchecked(&g) {
                continue;
            }
            let ring = &self.ctx.ring;
            let mut cols = vec![FreeModuleVector::new(ring, vec![g])?];
            for h in &self.gb {
                cols.push(FreeModuleVector::new(ring, vec![h.clone()])?);
            }
            let syz = tagged_syzygies(&cols, 1, &ModuleOrder::default(), self.ctx.max_degree)?;
            let colon = Ideal::new(&self.ctx, syz.into_iter().map(|v| v.into_entries().remove(0)).collect())?;
            acc = acc.intersection(&colon)?;
        }
        Ok(acc)
    }

    /// Equality as ideals of `S/Q`.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        self.check(other)?;
        Ok(self.gb == other.gb)
    }

    /// `I ⊆ J`.
    pub fn is_subset_of(&self, other: &Ideal) -> Result<bool> {
        self.check(other)?;
        Ok(self.gb.iter().all(|g| other.contains_unchecked(g)))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        if !same_ring(f.ring(), &self.ctx.ring) {
            return Err(Error::Context("polynomial from another ring".into()));
        }
        Ok(self.contains_unchecked(f))
    }

    fn contains_unchecked(&self, f: &Polynomial) -> bool {
        normal_form(f, &self.gb, ORDER).is_zero()
    }

    /// Whether `f` lies in the radical of `I`: `1 ∈ I' + (1 - s f)` in
    /// `S[s]`.
    pub fn radical_contains(&self, f: &Polynomial) -> Result<bool> {
        if !same_ring(f.ring(), &self.ctx.ring) {
            return Err(Error::Context("polynomial from another ring".into()));
        }
        if self.is_unit() {
            return Ok(true);
        }
        let ring = &self.ctx.ring;
        let big = ring.with_var(ring.nvars(), "s");
        let s = Polynomial::var(&big, ring.nvars());
        let lifted = f.insert_var(&big, ring.nvars());
        let mut gens: Vec<Polynomial> = self.gb.iter().map(|g| g.insert_var(&big, ring.nvars())).collect();
        gens.push(&Polynomial::one(&big) - &(&s * &lifted));
        let gb = buchberger_bounded(&gens, ORDER, self.ctx.max_degree)?;
        Ok(gb.len() == 1 && gb[0].is_constant())
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Ideal) -> bool {
        self.ctx.same(&other.ctx) && self.gb == other.gb
    }
}

impl Eq for Ideal {}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "(1)");
        }
        let gens = self.canonical_generators();
        if gens.is_empty() {
            return write!(f, "(0)");
        }
        write!(f, "(")?;
        for (k, g) in gens.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(spec: &str) -> Arc<RingContext> {
        RingContext::parse(spec).unwrap()
    }

    #[test]
    fn sums() {
        let r = ctx("x,y,z;QQi;");
        assert_eq!(
            r.ideal("(x)").unwrap().sum(&r.ideal("(y)").unwrap()).unwrap(),
            r.ideal("(x,y)").unwrap()
        );
        let s = r.ideal("(z+i*x)").unwrap().sum(&r.ideal("(z-i*x)").unwrap()).unwrap();
        assert_eq!(s.to_string(), "(x, z)");
        let i = r.ideal("(x^2+y, z)").unwrap();
        assert_eq!(i.sum(&Ideal::zero(&r)).unwrap(), i);
    }

    #[test]
    fn intersections() {
        let a1 = ctx("x,y,z;QQi;x^2+z^2");
        let m = a1
            .ideal("(z+i*x)")
            .unwrap()
            .intersection(&a1.ideal("(z-i*x)").unwrap())
            .unwrap();
        assert!(m.is_zero());
        assert_eq!(m.to_string(), "(0)");

        let d4 = ctx("x,y,z;QQi;z^2+x^2*y+y^3");
        let a = d4.ideal("(x+i*y, x*y-i*y^2, z)").unwrap();
        let b = d4.ideal("(x-i*y, x*y+i*y^2, z)").unwrap();
        let m = a.intersection(&b).unwrap();
        assert_eq!(m, d4.ideal("(x^2, x*y, y^2, z)").unwrap());
        assert!(m.is_subset_of(&a).unwrap() && m.is_subset_of(&b).unwrap());

        let p = ctx("x,y;QQ;");
        let i = p.ideal("(x^2, x*y)").unwrap();
        assert_eq!(i.intersection(&i).unwrap(), i);
        assert_eq!(i.intersection(&Ideal::unit(&p)).unwrap(), i);
        assert_eq!(
            p.ideal("(x)")
                .unwrap()
                .intersection(&p.ideal("(y)").unwrap())
                .unwrap()
                .to_string(),
            "(x*y)"
        );
    }

    #[test]
    fn quotients() {
        let r = ctx("x,y;QQ;x^2*y");
        let zero = Ideal::zero(&r);
        assert_eq!(
            zero.quotient(&r.ideal("(y)").unwrap()).unwrap(),
            r.ideal("(x^2)").unwrap()
        );
        assert_eq!(
            zero.quotient(&r.ideal("(x^2)").unwrap()).unwrap(),
            r.ideal("(y)").unwrap()
        );
        let i = r.ideal("(x, y^3)").unwrap();
        assert_eq!(i.quotient(&Ideal::unit(&r)).unwrap(), i);
        let p = ctx("x,y;QQ;");
        let q = p
            .ideal("(x^2, x*y)")
            .unwrap()
            .quotient(&p.ideal("(x)").unwrap())
            .unwrap();
        assert_eq!(q, p.ideal("(x, y)").unwrap());
    }

    #[test]
    fn equality_and_membership() {
        let e6 = ctx("x,y,z;QQi;z^2+x^3+y^4");
        assert!(e6
            .ideal("(x, z-i*y^2, z+i*y^2)")
            .unwrap()
            .equals(&e6.ideal("(x, y^2, z)").unwrap())
            .unwrap());
        let d = ctx("x,y;QQ;x^2*y");
        assert!(d.ideal("(x^2*y)").unwrap().is_zero());
        let p = ctx("x,y;QQ;");
        assert_ne!(p.ideal("(x)").unwrap(), p.ideal("(y)").unwrap());
        assert!(p
            .ideal("(x, y^2)")
            .unwrap()
            .contains(&p.poly("x*y + y^3").unwrap())
            .unwrap());
        assert!(!p.ideal("(x, y^2)").unwrap().contains(&p.poly("y").unwrap()).unwrap());
        let other = ctx("x,y;QQ;x^3");
        assert!(p.ideal("(x)").unwrap().equals(&other.ideal("(x)").unwrap()).is_err());
    }

    #[test]
    fn radical_membership() {
        let p = ctx("x,y,z;QQ;");
        let i = p.ideal("(x, y^2)").unwrap();
        assert!(i.radical_contains(&p.poly("y").unwrap()).unwrap());
        assert!(!p.ideal("(y)").unwrap().radical_contains(&p.poly("x").unwrap()).unwrap());
        let f = p.poly("x*y + z^2").unwrap();
        assert!(Ideal::new(&p, vec![f.pow(2)]).unwrap().radical_contains(&f).unwrap());
    }

    #[test]
    fn printing() {
        let r = ctx("x,y,z;QQ;z^2+x^3+y^4");
        assert_eq!(Ideal::unit(&r).to_string(), "(1)");
        assert_eq!(Ideal::zero(&r).to_string(), "(0)");
        assert_eq!(r.ideal("(z, y^2, x)").unwrap().to_string(), "(x, y^2, z)");
        assert_eq!(r.ideal("(y^3 + x^2, x, z)").unwrap().to_string(), "(x, y^3, z)");
    }
}
