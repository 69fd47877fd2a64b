//! Buchberger's algorithm on sparse module elements.
//!
//! An element of a free module `S^r` is a list of terms `c * m * e_pos`,
//! kept strictly descending in an [`EngineOrder`]. Ideals are the rank-one
//! case. Pairs are selected by the sugar strategy and pruned with the
//! Gebauer-Moeller installation of Buchberger's chain criterion; the product
//! criterion is only used in rank one, where it is valid.

use std::cmp::Ordering;

use super::PositionTie;
use crate::error::{Error, Result};
use crate::poly::{FieldElement, Monomial, MonomialOrder};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct VTerm {
    pub coeff: FieldElement,
    pub mon: Monomial,
    pub pos: u32,
}

pub(crate) type Vector = Vec<VTerm>;

/// Term order on `(monomial, position)` pairs. Lower positions are larger.
/// With `split = Some(s)`, every position `< s` dominates every position
/// `>= s`, which makes the order eliminate the first `s` components.
#[derive(Clone, Copy, Debug)]
pub(crate) struct EngineOrder {
    pub base: MonomialOrder,
    pub tie: PositionTie,
    pub split: Option<u32>,
}

impl EngineOrder {
    pub fn ideal(base: MonomialOrder) -> EngineOrder {
        EngineOrder {
            base,
            tie: PositionTie::PositionOverTerm,
            split: None,
        }
    }

    #[inline]
    pub fn cmp(&self, am: &Monomial, ap: u32, bm: &Monomial, bp: u32) -> Ordering {
        if let Some(s) = self.split {
            let (ba, bb) = (ap >= s, bp >= s);
            if ba != bb {
                return bb.cmp(&ba);
            }
        }
        match self.tie {
            PositionTie::PositionOverTerm => bp.cmp(&ap).then_with(|| self.base.cmp(am, bm)),
            PositionTie::TermOverPosition => self.base.cmp(am, bm).then_with(|| bp.cmp(&ap)),
        }
    }

    #[inline]
    fn cmp_terms(&self, a: &VTerm, b: &VTerm) -> Ordering {
        self.cmp(&a.mon, a.pos, &b.mon, b.pos)
    }

    /// Sorts descending and merges equal terms.
    pub fn normalize(&self, mut v: Vector) -> Vector {
        v.sort_by(|a, b| self.cmp_terms(b, a));
        let mut out: Vector = Vec::with_capacity(v.len());
        for t in v {
            match out.last_mut() {
                Some(last) if last.pos == t.pos && last.mon == t.mon => {
                    last.coeff = last.coeff.add(&t.coeff);
                }
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.coeff.is_zero());
        out
    }

    /// `f - c * m * g`.
    pub fn sub_scaled(&self, f: &[VTerm], c: &FieldElement, m: &Monomial, g: &[VTerm]) -> Vector {
        let mut out = Vec::with_capacity(f.len() + g.len());
        let mut i = 0;
        let mut gi = g.iter();
        let mut next_g = || {
            gi.next().map(|t| VTerm {
                coeff: t.coeff.mul(c).neg(),
                mon: t.mon.mul(m),
                pos: t.pos,
            })
        };
        let mut pending = next_g();
        while let Some(gt) = pending.take() {
            while i < f.len() && self.cmp_terms(&f[i], &gt) == Ordering::Greater {
                out.push(f[i].clone());
                i += 1;
            }
            if i < f.len() && f[i].pos == gt.pos && f[i].mon == gt.mon {
                let s = f[i].coeff.add(&gt.coeff);
                if !s.is_zero() {
                    out.push(VTerm {
                        coeff: s,
                        mon: gt.mon,
                        pos: gt.pos,
                    });
                }
                i += 1;
            } else {
                out.push(gt);
            }
            pending = next_g();
        }
        out.extend_from_slice(&f[i..]);
        out
    }
}

pub(crate) fn scale(v: &[VTerm], c: &FieldElement) -> Vector {
    v.iter()
        .map(|t| VTerm {
            coeff: t.coeff.mul(c),
            mon: t.mon.clone(),
            pos: t.pos,
        })
        .collect()
}

pub(crate) fn make_monic(v: Vector) -> Vector {
    match v.first() {
        Some(t) if !t.coeff.is_one() => {
            let inv = t.coeff.inv().expect("nonzero lead");
            scale(&v, &inv)
        }
        _ => v,
    }
}

fn vector_degree(v: &[VTerm]) -> u32 {
    v.iter().map(|t| t.mon.degree()).max().unwrap_or(0)
}

#[derive(Debug)]
struct Elem {
    v: Vector,
    mask: u64,
    sugar: u32,
    active: bool,
}

impl Elem {
    fn lead(&self) -> &VTerm {
        &self.v[0]
    }
}

#[derive(Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    pos: u32,
    sugar: u32,
}

/// A (partial) Groebner basis under construction, also usable as a reducer.
pub(crate) struct Basis {
    order: EngineOrder,
    elems: Vec<Elem>,
    pairs: Vec<Pair>,
    product_criterion: bool,
    max_degree: Option<u32>,
}

impl Basis {
    pub fn new(order: EngineOrder, product_criterion: bool, max_degree: Option<u32>) -> Basis {
        Basis {
            order,
            elems: Vec::new(),
            pairs: Vec::new(),
            product_criterion,
            max_degree,
        }
    }

    /// Wraps an existing Groebner basis for reduction only.
    pub fn from_gb(order: EngineOrder, gb: Vec<Vector>) -> Basis {
        let mut b = Basis::new(order, false, None);
        for v in gb.into_iter().filter(|v| !v.is_empty()) {
            let v = make_monic(v);
            let mask = v[0].mon.divmask();
            let sugar = vector_degree(&v);
            b.elems.push(Elem {
                v,
                mask,
                sugar,
                active: true,
            });
        }
        b
    }

    fn find_reducer(&self, t: &VTerm) -> Option<usize> {
        let mask = t.mon.divmask();
        let mut best: Option<usize> = None;
        for (k, e) in self.elems.iter().enumerate() {
            if !e.active || e.mask & !mask != 0 {
                continue;
            }
            let l = e.lead();
            if l.pos == t.pos && l.mon.divides(&t.mon) {
                match best {
                    Some(b) if self.elems[b].v.len() <= e.v.len() => {}
                    _ => best = Some(k),
                }
            }
        }
        best
    }

    /// Reduces until the leading term is irreducible (or the vector is zero).
    fn reduce_top(&self, mut f: Vector) -> Vector {
        while let Some(lt) = f.first() {
            let Some(k) = self.find_reducer(lt) else { break };
            let g = &self.elems[k].v;
            let m = g[0].mon.quotient_of(&lt.mon).expect("divides");
            let c = lt.coeff.clone();
            f = self.order.sub_scaled(&f, &c, &m, g);
        }
        f
    }

    /// Full reduction: no term of the result is divisible by an active lead.
    pub fn reduce_full(&self, f: Vector) -> Vector {
        let mut done: Vector = Vec::new();
        let mut rest = f;
        let mut start = 0;
        while start < rest.len() {
            let lt = &rest[start];
            match self.find_reducer(lt) {
                Some(k) => {
                    let g = &self.elems[k].v;
                    let m = g[0].mon.quotient_of(&lt.mon).expect("divides");
                    let c = lt.coeff.clone();
                    rest = self.order.sub_scaled(&rest[start..], &c, &m, g);
                    start = 0;
                }
                None => {
                    done.push(rest[start].clone());
                    start += 1;
                }
            }
        }
        done
    }

    fn check_degree(&self, deg: u32) -> Result<()> {
        match self.max_degree {
            Some(limit) if deg > limit => Err(Error::DegreeLimit { limit, reached: deg }),
            _ => Ok(()),
        }
    }

    /// Installs a new (monic, top-reduced, nonzero) element and updates the
    /// pair set (Gebauer-Moeller).
    fn insert(&mut self, v: Vector, sugar: u32) {
        let t = self.elems.len();
        let h_lead = v[0].clone();
        let mut candidates: Vec<Pair> = Vec::new();
        for (i, e) in self.elems.iter().enumerate() {
            if !e.active || e.lead().pos != h_lead.pos {
                continue;
            }
            let gl = &e.lead().mon;
            let lcm = gl.lcm(&h_lead.mon);
            let s = (e.sugar + lcm.degree() - gl.degree()).max(sugar + lcm.degree() - h_lead.mon.degree());
            candidates.push(Pair {
                i,
                j: t,
                lcm,
                pos: h_lead.pos,
                sugar: s,
            });
        }
        let coprime =
            |p: &Pair, elems: &[Elem]| self.product_criterion && elems[p.i].lead().mon.is_coprime(&h_lead.mon);
        // Chain criterion among the new pairs.
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(p) = candidates.pop() {
            let dominated = candidates.iter().chain(kept.iter()).any(|q| q.lcm.divides(&p.lcm));
            if coprime(&p, &self.elems) || !dominated {
                kept.push(p);
            }
        }
        kept.retain(|p| !coprime(p, &self.elems));
        // Old pairs made redundant by the new lead.
        let elems = &self.elems;
        self.pairs.retain(|p| {
            if p.pos != h_lead.pos || !h_lead.mon.divides(&p.lcm) {
                return true;
            }
            let li = elems[p.i].lead().mon.lcm(&h_lead.mon);
            let lj = elems[p.j].lead().mon.lcm(&h_lead.mon);
            li == p.lcm || lj == p.lcm
        });
        self.pairs.extend(kept);
        for e in self.elems.iter_mut() {
            if e.active && e.lead().pos == h_lead.pos && h_lead.mon.divides(&e.lead().mon) {
                e.active = false;
            }
        }
        let mask = h_lead.mon.divmask();
        self.elems.push(Elem {
            v,
            mask,
            sugar,
            active: true,
        });
    }

    fn add_generator(&mut self, v: Vector) -> Result<()> {
        let sugar = vector_degree(&v);
        self.check_degree(sugar)?;
        let r = self.reduce_top(v);
        if !r.is_empty() {
            self.insert(make_monic(r), sugar);
        }
        Ok(())
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let order = self.order;
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (p, q) = (&self.pairs[a], &self.pairs[b]);
            p.sugar
                .cmp(&q.sugar)
                .then_with(|| order.cmp(&p.lcm, p.pos, &q.lcm, q.pos))
        })?;
        Some(self.pairs.swap_remove(best))
    }

    fn s_vector(&self, p: &Pair) -> Vector {
        let (f, g) = (&self.elems[p.i].v, &self.elems[p.j].v);
        let mf = f[0].mon.quotient_of(&p.lcm).expect("lcm");
        let mg = g[0].mon.quotient_of(&p.lcm).expect("lcm");
        let one = f[0].coeff.field().one();
        let lifted: Vector = f
            .iter()
            .map(|t| VTerm {
                coeff: t.coeff.clone(),
                mon: t.mon.mul(&mf),
                pos: t.pos,
            })
            .collect();
        self.order.sub_scaled(&lifted, &one, &mg, g)
    }

    pub fn run(&mut self) -> Result<()> {
        while let Some(p) = self.next_pair() {
            self.check_degree(p.lcm.degree())?;
            let s = self.s_vector(&p);
            let r = self.reduce_top(s);
            if !r.is_empty() {
                self.insert(make_monic(r), p.sugar);
            }
        }
        Ok(())
    }

    /// The reduced basis: minimal leads, monic, tails fully reduced, sorted
    /// descending by leading term.
    pub fn into_reduced(self) -> Vec<Vector> {
        let order = self.order;
        let active: Vec<Vector> = self.elems.into_iter().filter(|e| e.active).map(|e| e.v).collect();
        let mut out = Vec::with_capacity(active.len());
        for k in 0..active.len() {
            let others: Vec<Vector> = active
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, v)| v.clone())
                .collect();
            let reducer = Basis::from_gb(order, others);
            let head = active[k][0].clone();
            let mut tail = reducer.reduce_full(active[k][1..].to_vec());
            tail.insert(0, head);
            out.push(tail);
        }
        out.sort_by(|a, b| order.cmp_terms(&b[0], &a[0]));
        out
    }
}

/// Reduced Groebner basis of the submodule generated by `gens`.
pub(crate) fn groebner_basis(
    gens: Vec<Vector>,
    order: EngineOrder,
    product_criterion: bool,
    max_degree: Option<u32>,
) -> Result<Vec<Vector>> {
    let mut gens: Vec<Vector> = gens
        .into_iter()
        .map(|v| order.normalize(v))
        .filter(|v| !v.is_empty())
        .collect();
    gens.sort_by(|a, b| order.cmp_terms(&a[0], &b[0]));
    let mut basis = Basis::new(order, product_criterion, max_degree);
    for g in gens {
        basis.add_generator(g)?;
        basis.run()?;
    }
    Ok(basis.into_reduced())
}
