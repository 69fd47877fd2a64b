//! Trace ideals from `Hom(M, R)`, computed as the kernel of the transposed
//! presentation matrix, and the MCM test ideal.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{module_buchberger_bounded, module_normal_form, tagged_syzygies, FreeModuleVector, ModuleOrder};
use crate::ideal::{Ideal, RingContext};
use crate::matfac::ZFormFactorization;
use crate::matrix::PolyMatrix;
use crate::poly::polynomial::same_ring;
use crate::poly::Polynomial;

/// `M = coker(A : R^m -> R^n)` for an `n x m` matrix `A`.
#[derive(Clone, Debug)]
pub struct ModulePresentation {
    ctx: Arc<RingContext>,
    matrix: PolyMatrix,
}

impl ModulePresentation {
    /// Entries are reduced modulo the defining ideal.
    pub fn new(ctx: &Arc<RingContext>, matrix: &PolyMatrix) -> Result<ModulePresentation> {
        if !same_ring(ctx.ring(), matrix.ring()) {
            return Err(Error::Context("presentation matrix from another ring".into()));
        }
        Ok(ModulePresentation {
            ctx: ctx.clone(),
            matrix: matrix.map(|e| ctx.reduce(e)),
        })
    }

    pub fn context(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    /// The presentation of `self ⊕ other`.
    pub fn direct_sum(&self, other: &ModulePresentation) -> Result<ModulePresentation> {
        check_same(&self.ctx, &other.ctx)?;
        ModulePresentation::new(&self.ctx, &self.matrix.block_diag(&other.matrix)?)
    }

    /// The trace ideal: the ideal of all entries of generators of
    /// `Hom(M, R) = {v : v^T A = 0}`.
    pub fn trace_ideal(&self) -> Result<Ideal> {
        trace_ideal_oracle(self)
    }
}

fn check_same(a: &Arc<RingContext>, b: &Arc<RingContext>) -> Result<()> {
    if Arc::ptr_eq(a, b) || (same_ring(a.ring(), b.ring()) && a.defining_gb() == b.defining_gb()) {
        Ok(())
    } else {
        Err(Error::Context("modules over different rings".into()))
    }
}

/// Generators of `ker(A : R^m -> R^n)` as a submodule of `R^m`, where
/// `R = S/Q`. The columns of `A` are lifted together with `q e_i` for every
/// generator `q` of `Q`; the syzygies, projected onto the coordinates of the
/// columns of `A`, are the kernel.
pub fn kernel_over_quotient(a: &PolyMatrix, ctx: &Arc<RingContext>) -> Result<Vec<FreeModuleVector>> {
    if !same_ring(ctx.ring(), a.ring()) {
        return Err(Error::Context("matrix from another ring".into()));
    }
    let ring = ctx.ring();
    let (n, m) = (a.rows(), a.cols());
    let mut cols: Vec<FreeModuleVector> = (0..m)
        .map(|j| FreeModuleVector::new(ring, a.column(j).iter().map(|e| ctx.reduce(e)).collect()))
        .collect::<Result<_>>()?;
    for q in ctx.defining_gb() {
        for i in 0..n {
            let mut e = FreeModuleVector::zero(ring, n).into_entries();
            e[i] = q.clone();
            cols.push(FreeModuleVector::new(ring, e)?);
        }
    }
    let syz = tagged_syzygies(&cols, m, &ModuleOrder::default(), ctx.max_degree())?;
    let mut out = Vec::new();
    for v in syz {
        let v = FreeModuleVector::new(ring, v.entries().iter().map(|e| ctx.reduce(e)).collect())?;
        if v.is_zero() {
            continue;
        }
        for i in 0..n {
            let s = (0..m).fold(Polynomial::zero(ring), |acc, j| &acc + &(a.get(i, j) * &v.entries()[j]));
            if !ctx.reduce(&s).is_zero() {
                return Err(Error::Argument(format!(
                    "kernel element {v} fails A v = 0 in row {}",
                    i + 1
                )));
            }
        }
        out.push(v);
    }
    Ok(out)
}

/// A submodule of `R^n` with a Groebner basis of its preimage in `S^n`.
pub struct Submodule {
    ctx: Arc<RingContext>,
    gb: Vec<FreeModuleVector>,
}

impl Submodule {
    /// Fails with a rank error if `gens` have different lengths. An empty
    /// generator list is the zero submodule (of any rank).
    pub fn new(gens: &[FreeModuleVector], ctx: &Arc<RingContext>) -> Result<Submodule> {
        let Some(first) = gens.first() else {
            return Ok(Submodule {
                ctx: ctx.clone(),
                gb: Vec::new(),
            });
        };
        let ring = ctx.ring();
        let n = first.rank();
        let mut all = gens.to_vec();
        for q in ctx.defining_gb() {
            for i in 0..n {
                all.push(FreeModuleVector::unit(ring, n, i).scale(q));
            }
        }
        let gb = module_buchberger_bounded(&all, &ModuleOrder::default(), ctx.max_degree())?;
        Ok(Submodule { ctx: ctx.clone(), gb })
    }

    pub fn contains(&self, v: &FreeModuleVector) -> bool {
        if self.gb.is_empty() {
            return v.entries().iter().all(|e| self.ctx.reduce(e).is_zero());
        }
        module_normal_form(v, &self.gb, &ModuleOrder::default()).is_zero()
    }
}

/// Trace ideal of `coker(A)`: the ideal generated by the entries of the
/// generators of `ker(A^T)`.
pub fn trace_ideal_oracle(p: &ModulePresentation) -> Result<Ideal> {
    let hom = kernel_over_quotient(&p.matrix.transpose(), &p.ctx)?;
    let gens = hom
        .into_iter()
        .flat_map(FreeModuleVector::into_entries)
        .filter(|e| !e.is_zero())
        .collect();
    Ideal::new(&p.ctx, gens)
}

/// A maximal Cohen-Macaulay module, given either by a presentation or by a
/// z-form matrix factorization (as `coker(z id - phi)`).
#[derive(Clone, Debug)]
pub enum McmModule {
    Presentation(ModulePresentation),
    ZForm(ZFormFactorization),
}

impl McmModule {
    /// The trace ideal: by the oracle for presentations, from the entries of
    /// `z id + phi` for factorizations.
    pub fn trace_ideal(&self, ctx: &Arc<RingContext>) -> Result<Ideal> {
        match self {
            McmModule::Presentation(p) => {
                check_same(&p.ctx, ctx)?;
                trace_ideal_oracle(p)
            }
            McmModule::ZForm(zf) => zf.trace_ideal_cor(ctx),
        }
    }

    pub fn presentation(&self, ctx: &Arc<RingContext>) -> Result<ModulePresentation> {
        match self {
            McmModule::Presentation(p) => Ok(p.clone()),
            McmModule::ZForm(zf) => ModulePresentation::new(ctx, zf.minus()),
        }
    }
}

/// Intersection of the trace ideals of `modules`, taken left to right. An
/// empty list (a regular ring has no non-free indecomposable MCM modules)
/// gives the unit ideal.
pub fn mcm_test_ideal(modules: &[McmModule], ctx: &Arc<RingContext>) -> Result<Ideal> {
    if modules.is_empty() {
        log::warn!("no non-free MCM modules given; returning the unit ideal");
    }
    intersect_all(modules.iter().map(|m| m.trace_ideal(ctx)), ctx)
}

/// Left-to-right intersection of a sequence of ideals; `(1)` if empty.
pub fn intersect_all(ideals: impl IntoIterator<Item = Result<Ideal>>, ctx: &Arc<RingContext>) -> Result<Ideal> {
    let mut acc = Ideal::unit(ctx);
    for i in ideals {
        acc = acc.intersection(&i?)?;
    }
    Ok(acc)
}

/// Trace ideal of `P1 ⊕ P2` computed from the block-diagonal presentation.
pub fn direct_sum_trace(p1: &ModulePresentation, p2: &ModulePresentation) -> Result<Ideal> {
    trace_ideal_oracle(&p1.direct_sum(p2)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_matrix;

    fn pres(ctx: &Arc<RingContext>, m: &str) -> ModulePresentation {
        ModulePresentation::new(ctx, &parse_matrix(m, ctx.ring()).unwrap()).unwrap()
    }

    #[test]
    fn annihilator_kernels() {
        let r = RingContext::parse("x,y;QQ;x^2*y").unwrap();
        let ker = kernel_over_quotient(&parse_matrix("[[y]]", r.ring()).unwrap(), &r).unwrap();
        let gens: Vec<Polynomial> = ker.iter().map(|v| v.entries()[0].clone()).collect();
        assert_eq!(Ideal::new(&r, gens).unwrap(), r.ideal("(x^2)").unwrap());
        assert!(kernel_over_quotient(&PolyMatrix::identity(r.ring(), 3), &r)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn kernel_is_image_of_transposed_partner() {
        let r = RingContext::parse("x,y;QQ;y^2+x^3").unwrap();
        // phi = [[0,-x^2],[x,0]], z = y; ker(y id - phi^T) = im(y id + phi^T).
        let minus_t = parse_matrix("[[y, -x]; [x^2, y]]", r.ring()).unwrap();
        let plus_t = parse_matrix("[[y, x]; [-x^2, y]]", r.ring()).unwrap();
        let ker = kernel_over_quotient(&minus_t, &r).unwrap();
        let im: Vec<FreeModuleVector> = (0..2)
            .map(|j| FreeModuleVector::new(r.ring(), plus_t.column(j)).unwrap())
            .collect();
        let (k, i) = (Submodule::new(&ker, &r).unwrap(), Submodule::new(&im, &r).unwrap());
        assert!(im.iter().all(|v| k.contains(v)));
        assert!(ker.iter().all(|v| i.contains(v)));
    }

    #[test]
    fn oracle_traces() {
        let r = RingContext::parse("x,y;QQ;x^2*y").unwrap();
        let m1 = pres(&r, "[[y]]");
        let m2 = pres(&r, "[[x^2]]");
        assert_eq!(trace_ideal_oracle(&m1).unwrap().to_string(), "(x^2)");
        assert_eq!(trace_ideal_oracle(&m2).unwrap().to_string(), "(y)");
        assert!(trace_ideal_oracle(&pres(&r, "[[0];[0]]")).unwrap().is_unit());
        assert_eq!(direct_sum_trace(&m1, &m2).unwrap(), r.ideal("(x^2, y)").unwrap());
        assert!(direct_sum_trace(&m1, &pres(&r, "[[0]]")).unwrap().is_unit());

        let tau = mcm_test_ideal(&[McmModule::Presentation(m1), McmModule::Presentation(m2)], &r).unwrap();
        assert!(tau.is_zero());
        assert!(mcm_test_ideal(&[], &r).unwrap().is_unit());
    }

    #[test]
    fn oracle_on_e6() {
        let r = RingContext::parse("x,y,z;QQi;z^2+x^3+y^4").unwrap();
        let p = pres(&r, "[[z - i*y^2, x]; [-x^2, z + i*y^2]]");
        assert_eq!(trace_ideal_oracle(&p).unwrap().to_string(), "(x, y^2, z)");
    }

    #[test]
    fn permutation_invariance() {
        let r = RingContext::parse("x,y,z;QQ;z^2+x^2*y+y^3").unwrap();
        let a = parse_matrix(
            "[[z, 0, x, y]; [0, z, y^2, -x*y]; [x*y, y^2, z, 0]; [y^2, -x, 0, z]]",
            r.ring(),
        )
        .unwrap();
        let base = trace_ideal_oracle(&ModulePresentation::new(&r, &a).unwrap()).unwrap();
        let permuted = a.permute(&[2, 0, 3, 1], &[1, 3, 0, 2]);
        let other = trace_ideal_oracle(&ModulePresentation::new(&r, &permuted).unwrap()).unwrap();
        assert_eq!(base, other);
    }
}
