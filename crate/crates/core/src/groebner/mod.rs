//! Groebner bases of ideals and of submodules of free modules, normal forms
//! and syzygies.

pub(crate) mod engine;

use std::fmt;
use std::sync::Arc;

use engine::{EngineOrder, VTerm, Vector};

use crate::error::{Error, Result};
use crate::poly::polynomial::same_ring;
use crate::poly::{Monomial, MonomialOrder, PolyRing, Polynomial, Term};

/// An element of the free module `S^r` over the ambient polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModuleVector {
    ring: Arc<PolyRing>,
    entries: Vec<Polynomial>,
}

impl FreeModuleVector {
    pub fn new(ring: &Arc<PolyRing>, entries: Vec<Polynomial>) -> Result<FreeModuleVector> {
        if let Some(e) = entries.iter().find(|e| !same_ring(e.ring(), ring)) {
            return Err(Error::Context(format!("entry {e} is not in the module's ring")));
        }
        Ok(FreeModuleVector {
            ring: ring.clone(),
            entries,
        })
    }

    pub fn zero(ring: &Arc<PolyRing>, rank: usize) -> FreeModuleVector {
        FreeModuleVector {
            ring: ring.clone(),
            entries: vec![Polynomial::zero(ring); rank],
        }
    }

    /// The standard basis vector `e_i`.
    pub fn unit(ring: &Arc<PolyRing>, rank: usize, i: usize) -> FreeModuleVector {
        let mut v = FreeModuleVector::zero(ring, rank);
        v.entries[i] = Polynomial::one(ring);
        v
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Polynomial> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn scale(&self, f: &Polynomial) -> FreeModuleVector {
        FreeModuleVector {
            ring: self.ring.clone(),
            entries: self.entries.iter().map(|e| e * f).collect(),
        }
    }

    pub fn try_add(&self, other: &FreeModuleVector) -> Result<FreeModuleVector> {
        if self.rank() != other.rank() {
            return Err(Error::Rank {
                expected: self.rank(),
                found: other.rank(),
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<_>>()?;
        Ok(FreeModuleVector {
            ring: self.ring.clone(),
            entries,
        })
    }

    fn to_engine(&self, order: &EngineOrder, offset: u32) -> Vector {
        let terms = self.entries.iter().enumerate().flat_map(|(k, p)| {
            p.terms().iter().map(move |t| VTerm {
                coeff: t.coeff.clone(),
                mon: t.mon.clone(),
                pos: k as u32 + offset,
            })
        });
        order.normalize(terms.collect())
    }

    fn from_engine(ring: &Arc<PolyRing>, rank: usize, v: &[VTerm], offset: u32) -> FreeModuleVector {
        let mut buckets: Vec<Vec<Term>> = vec![Vec::new(); rank];
        for t in v {
            buckets[(t.pos - offset) as usize].push(Term {
                coeff: t.coeff.clone(),
                mon: t.mon.clone(),
            });
        }
        FreeModuleVector {
            ring: ring.clone(),
            entries: buckets.into_iter().map(|b| Polynomial::from_terms(ring, b)).collect(),
        }
    }
}

impl fmt::Display for FreeModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum PositionTie {
    #[default]
    PositionOverTerm,
    TermOverPosition,
}

/// Order on the terms `m * e_i` of a free module: a monomial order plus a
/// rule for combining it with the position, where `e_0 > e_1 > ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct ModuleOrder {
    pub base: MonomialOrder,
    pub tie: PositionTie,
}

impl ModuleOrder {
    pub fn new(base: MonomialOrder, tie: PositionTie) -> ModuleOrder {
        ModuleOrder { base, tie }
    }

    fn engine(&self) -> EngineOrder {
        EngineOrder {
            base: self.base,
            tie: self.tie,
            split: None,
        }
    }
}

fn poly_to_engine(f: &Polynomial, order: &EngineOrder) -> Vector {
    order.normalize(
        f.terms()
            .iter()
            .map(|t| VTerm {
                coeff: t.coeff.clone(),
                mon: t.mon.clone(),
                pos: 0,
            })
            .collect(),
    )
}

fn engine_to_poly(ring: &Arc<PolyRing>, v: &[VTerm]) -> Polynomial {
    Polynomial::from_terms(
        ring,
        v.iter().map(|t| Term {
            coeff: t.coeff.clone(),
            mon: t.mon.clone(),
        }),
    )
}

fn common_ring<'a>(items: impl IntoIterator<Item = &'a Arc<PolyRing>>) -> Result<Option<&'a Arc<PolyRing>>> {
    let mut ring: Option<&Arc<PolyRing>> = None;
    for r in items {
        match ring {
            None => ring = Some(r),
            Some(r0) if same_ring(r0, r) => {}
            Some(_) => return Err(Error::Context("inputs live in different rings".into())),
        }
    }
    Ok(ring)
}

/// `lcm/LT(f) * f - lcm/LT(g) * g` for the leading terms in `order`.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: MonomialOrder) -> Result<Polynomial> {
    common_ring([f.ring(), g.ring()])?;
    let (Some(lf), Some(lg)) = (f.leading_term(order), g.leading_term(order)) else {
        return Err(Error::Argument("S-polynomial of the zero polynomial".into()));
    };
    let lcm = lf.mon.lcm(&lg.mon);
    let a = f.mul_term(
        &lf.coeff.inv().expect("nonzero"),
        &lf.mon.quotient_of(&lcm).expect("lcm"),
    );
    let b = g.mul_term(
        &lg.coeff.inv().expect("nonzero"),
        &lg.mon.quotient_of(&lcm).expect("lcm"),
    );
    a.try_sub(&b)
}

/// Reduced Groebner basis of the ideal generated by `gens`: monic leads,
/// sorted descending by leading monomial. The empty list is the zero ideal.
///
/// Panics if the generators live in different rings; see
/// [`buchberger_bounded`] for the fallible form.
pub fn buchberger(gens: &[Polynomial], order: MonomialOrder) -> Vec<Polynomial> {
    buchberger_bounded(gens, order, None).expect("generators from different rings")
}

/// [`buchberger`] with an optional abort when an S-pair exceeds `max_degree`.
pub fn buchberger_bounded(
    gens: &[Polynomial],
    order: MonomialOrder,
    max_degree: Option<u32>,
) -> Result<Vec<Polynomial>> {
    let Some(ring) = common_ring(gens.iter().map(Polynomial::ring))? else {
        return Ok(Vec::new());
    };
    let eo = EngineOrder::ideal(order);
    let vs = gens.iter().map(|g| poly_to_engine(g, &eo)).collect();
    let gb = engine::groebner_basis(vs, eo, true, max_degree)?;
    Ok(gb.iter().map(|v| engine_to_poly(ring, v)).collect())
}

/// Remainder of `f` on full reduction by the Groebner basis `gb`; zero iff
/// `f` lies in the ideal.
pub fn normal_form(f: &Polynomial, gb: &[Polynomial], order: MonomialOrder) -> Polynomial {
    let eo = EngineOrder::ideal(order);
    let reducer = engine::Basis::from_gb(eo, gb.iter().map(|g| poly_to_engine(g, &eo)).collect());
    engine_to_poly(f.ring(), &reducer.reduce_full(poly_to_engine(f, &eo)))
}

fn check_ranks(gens: &[FreeModuleVector]) -> Result<usize> {
    common_ring(gens.iter().map(FreeModuleVector::ring))?;
    let rank = gens.first().map_or(0, FreeModuleVector::rank);
    if let Some(bad) = gens.iter().find(|g| g.rank() != rank) {
        return Err(Error::Rank {
            expected: rank,
            found: bad.rank(),
        });
    }
    Ok(rank)
}

/// Reduced Groebner basis of the submodule of `S^r` generated by `gens`.
pub fn module_buchberger(gens: &[FreeModuleVector], order: &ModuleOrder) -> Result<Vec<FreeModuleVector>> {
    module_buchberger_bounded(gens, order, None)
}

pub fn module_buchberger_bounded(
    gens: &[FreeModuleVector],
    order: &ModuleOrder,
    max_degree: Option<u32>,
) -> Result<Vec<FreeModuleVector>> {
    let rank = check_ranks(gens)?;
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let eo = order.engine();
    let vs = gens.iter().map(|g| g.to_engine(&eo, 0)).collect();
    let gb = engine::groebner_basis(vs, eo, rank == 1, max_degree)?;
    Ok(gb
        .iter()
        .map(|v| FreeModuleVector::from_engine(first.ring(), rank, v, 0))
        .collect())
}

/// Normal form of `v` with respect to a module Groebner basis.
pub fn module_normal_form(v: &FreeModuleVector, gb: &[FreeModuleVector], order: &ModuleOrder) -> FreeModuleVector {
    let eo = order.engine();
    let reducer = engine::Basis::from_gb(eo, gb.iter().map(|g| g.to_engine(&eo, 0)).collect());
    let r = reducer.reduce_full(v.to_engine(&eo, 0));
    FreeModuleVector::from_engine(v.ring(), v.rank(), &r, 0)
}

/// Generators of the syzygy module `{c : sum c_j gens_j = 0}`.
pub fn syzygy_basis(gens: &[FreeModuleVector], order: &ModuleOrder) -> Result<Vec<FreeModuleVector>> {
    tagged_syzygies(gens, gens.len(), order, None)
}

/// Syzygies of `gens` projected onto the coefficients of the first `tagged`
/// generators: the vectors `(c_0, ..., c_{tagged-1})` for which some
/// combination `sum_j c_j gens_j` (with arbitrary coefficients on the
/// remaining generators) vanishes.
///
/// Each tagged generator `g_j` is lifted to `(g_j, e_j)` in `S^{r + tagged}`;
/// the Groebner basis under an order eliminating the first `r` components
/// contains generators of the projected syzygy module as its elements
/// supported on the tag components.
pub(crate) fn tagged_syzygies(
    gens: &[FreeModuleVector],
    tagged: usize,
    order: &ModuleOrder,
    max_degree: Option<u32>,
) -> Result<Vec<FreeModuleVector>> {
    let rank = check_ranks(gens)?;
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let ring = first.ring();
    let eo = EngineOrder {
        base: order.base,
        tie: order.tie,
        split: Some(rank as u32),
    };
    let one = ring.field().one();
    let vs: Vec<Vector> = gens
        .iter()
        .enumerate()
        .map(|(j, g)| {
            let mut v = g.to_engine(&eo, 0);
            if j < tagged {
                v.push(VTerm {
                    coeff: one.clone(),
                    mon: Monomial::one(ring.nvars()),
                    pos: (rank + j) as u32,
                });
            }
            eo.normalize(v)
        })
        .collect();
    let gb = engine::groebner_basis(vs, eo, false, max_degree)?;
    Ok(gb
        .iter()
        .filter(|v| v[0].pos >= rank as u32)
        .map(|v| FreeModuleVector::from_engine(ring, tagged, v, rank as u32))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::poly::Field;

    fn ring() -> Arc<PolyRing> {
        PolyRing::new(["x", "y", "z"], Field::GaussianRational)
    }

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &ring()).unwrap()
    }

    fn ps(items: &[&str]) -> Vec<Polynomial> {
        items.iter().map(|s| p(s)).collect()
    }

    fn vec_of(items: &[&str]) -> FreeModuleVector {
        FreeModuleVector::new(&ring(), ps(items)).unwrap()
    }

    #[test]
    fn s_polynomials() {
        assert!(s_polynomial(&p("x"), &p("y"), MonomialOrder::Lex).unwrap().is_zero());
        let s = s_polynomial(&p("x^2-y"), &p("x^3"), MonomialOrder::Lex).unwrap();
        assert_eq!(s, &(&p("x") * &p("x^2-y")) - &p("x^3"));
        assert_eq!(s, p("-x*y"));
        assert!(s_polynomial(&p("x+y"), &p("x+y"), MonomialOrder::GrevLex)
            .unwrap()
            .is_zero());
        assert!(s_polynomial(&p("0"), &p("x"), MonomialOrder::GrevLex).is_err());
    }

    #[test]
    fn reduced_bases() {
        assert_eq!(buchberger(&ps(&["x", "y"]), MonomialOrder::GrevLex), ps(&["x", "y"]));
        let gb = buchberger(&ps(&["z+i*x", "z-i*x"]), MonomialOrder::GrevLex);
        assert_eq!(gb, ps(&["x", "z"]));
        // x = (1/2i)((z+ix) - (z-ix)), z = ((z+ix) + (z-ix))/2.
        assert_eq!(&(&p("z+i*x") - &p("z-i*x")) * &p("1/(2*i)"), p("x"));
        assert_eq!(&(&p("z+i*x") + &p("z-i*x")) * &p("1/2"), p("z"));

        let gb = buchberger(&ps(&["x^2+z^2", "z+i*x"]), MonomialOrder::GrevLex);
        assert_eq!(gb, ps(&["x-i*z"]));
        assert_eq!(&p("x-i*z") * &p("i"), p("z+i*x"));
        assert!(buchberger(&[], MonomialOrder::GrevLex).is_empty());
    }

    #[test]
    fn normal_forms() {
        let gb = buchberger(&ps(&["x^2*y"]), MonomialOrder::GrevLex);
        assert!(normal_form(&p("x^2*y"), &gb, MonomialOrder::GrevLex).is_zero());
        let gb = buchberger(&ps(&["y"]), MonomialOrder::GrevLex);
        assert_eq!(normal_form(&p("x^2"), &gb, MonomialOrder::GrevLex), p("x^2"));
        // One reduction step in lex: x^3 -> -y^3 - z^2.
        let gb = buchberger(&ps(&["z^2+x^3+y^3"]), MonomialOrder::Lex);
        let nf = normal_form(&p("x^3"), &gb, MonomialOrder::Lex);
        assert_eq!(nf, &p("x^3") - &p("z^2+x^3+y^3"));
    }

    #[test]
    fn degree_guard() {
        let err = buchberger_bounded(&ps(&["x^3-y", "x*y^2-z"]), MonomialOrder::GrevLex, Some(2));
        assert!(matches!(err, Err(Error::DegreeLimit { limit: 2, .. })));
    }

    #[test]
    fn module_bases() {
        let o = ModuleOrder::default();
        let gens = vec![vec_of(&["1", "0"]), vec_of(&["0", "1"])];
        assert_eq!(module_buchberger(&gens, &o).unwrap(), gens);
        let gens = vec![vec_of(&["y", "0"]), vec_of(&["0", "y"])];
        assert_eq!(module_buchberger(&gens, &o).unwrap(), gens);
        let bad = vec![vec_of(&["y", "0"]), vec_of(&["y"])];
        assert!(matches!(module_buchberger(&bad, &o), Err(Error::Rank { .. })));
    }

    #[test]
    fn syzygies() {
        let o = ModuleOrder::default();
        let free = vec![vec_of(&["1", "0"]), vec_of(&["0", "1"])];
        assert!(syzygy_basis(&free, &o).unwrap().is_empty());
        let koszul = syzygy_basis(&[vec_of(&["x"]), vec_of(&["y"])], &o).unwrap();
        assert_eq!(koszul.len(), 1);
        let s = &koszul[0];
        assert!(
            s.entries()[0] == p("y") && s.entries()[1] == p("-x")
                || s.entries()[0] == p("-y") && s.entries()[1] == p("x")
        );
    }

    #[test]
    fn syzygy_certifies_annihilator() {
        // In k[x,y]/(x^2 y): relations c1 * y + c2 * x^2 y = 0 among y and the
        // defining polynomial give ann(y) = (x^2) on the first coordinate.
        let o = ModuleOrder::default();
        let syz = syzygy_basis(&[vec_of(&["y"]), vec_of(&["x^2*y"])], &o).unwrap();
        assert!(syz
            .iter()
            .any(|s| s.entries()[0] == p("x^2") && s.entries()[1] == p("-1")));
    }
}
