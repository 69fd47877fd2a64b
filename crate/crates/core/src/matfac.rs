//! Matrix factorizations and the trace ideal read off from `z id + phi`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{syzygy_basis, FreeModuleVector, ModuleOrder};
use crate::ideal::{Ideal, RingContext};
use crate::matrix::PolyMatrix;
use crate::poly::polynomial::same_ring;
use crate::poly::{MonomialOrder, PolyRing, Polynomial};
use crate::trace::{kernel_over_quotient, Submodule};

/// Which of the two products failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Product {
    AB,
    BA,
}

impl fmt::Display for Product {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Product::AB => "A*B",
            Product::BA => "B*A",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    /// `product[row][col] - expected` is `residual`; indices are 0-based.
    Invalid {
        product: Product,
        row: usize,
        col: usize,
        residual: Polynomial,
    },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Valid => write!(f, "valid"),
            Verdict::Invalid {
                product,
                row,
                col,
                residual,
            } => write!(
                f,
                "invalid: {product} - f*id has entry {residual} at ({}, {})",
                row + 1,
                col + 1
            ),
        }
    }
}

fn first_nonzero(m: &PolyMatrix) -> Option<(usize, usize, Polynomial)> {
    (0..m.rows())
        .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
        .find(|&(i, j)| !m.get(i, j).is_zero())
        .map(|(i, j)| (i, j, m.get(i, j).clone()))
}

/// Checks `A B = B A = f id`.
pub fn verify_factorization(a: &PolyMatrix, b: &PolyMatrix, f: &Polynomial) -> Result<Verdict> {
    if !a.is_square() || !b.is_square() {
        return Err(Error::Argument("matrix factorizations need square matrices".into()));
    }
    if a.rows() != b.rows() {
        return Err(Error::Argument(format!("sizes differ: {} and {}", a.rows(), b.rows())));
    }
    if !same_ring(a.ring(), f.ring()) {
        return Err(Error::Context("polynomial and matrices from different rings".into()));
    }
    let target = PolyMatrix::scalar(f, a.rows());
    for (which, prod) in [(Product::AB, a.try_mul(b)?), (Product::BA, b.try_mul(a)?)] {
        if let Some((row, col, residual)) = first_nonzero(&prod.try_sub(&target)?) {
            return Ok(Verdict::Invalid {
                product: which,
                row,
                col,
                residual,
            });
        }
    }
    Ok(Verdict::Valid)
}

/// A validated pair `(A, B)` with `A B = B A = f id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFactorization {
    a: PolyMatrix,
    b: PolyMatrix,
    f: Polynomial,
}

impl MatrixFactorization {
    pub fn new(a: PolyMatrix, b: PolyMatrix, f: Polynomial) -> Result<MatrixFactorization> {
        match verify_factorization(&a, &b, &f)? {
            Verdict::Valid => Ok(MatrixFactorization { a, b, f }),
            bad => Err(Error::Factorization(bad.to_string())),
        }
    }

    pub fn a(&self) -> &PolyMatrix {
        &self.a
    }

    pub fn b(&self) -> &PolyMatrix {
        &self.b
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn rank(&self) -> usize {
        self.a.rows()
    }
}

/// The factorization `(z id - phi, z id + phi)` of `z^2 + g`, where `phi`
/// and `g` do not involve `z` and `phi^2 = -g id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZFormFactorization {
    phi: PolyMatrix,
    g: Polynomial,
    z: usize,
    pair: MatrixFactorization,
}

impl ZFormFactorization {
    pub fn new(phi: PolyMatrix, g: Polynomial, z: usize) -> Result<ZFormFactorization> {
        let ring = phi.ring().clone();
        if !same_ring(&ring, g.ring()) {
            return Err(Error::Context("phi and g from different rings".into()));
        }
        if z >= ring.nvars() {
            return Err(Error::Argument(format!("no variable with index {z}")));
        }
        let zname = &ring.names()[z];
        if !phi.is_square() {
            return Err(Error::Argument("phi must be square".into()));
        }
        for i in 0..phi.rows() {
            for j in 0..phi.cols() {
                if phi.get(i, j).contains_var(z) {
                    return Err(Error::Factorization(format!(
                        "{zname} occurs in phi at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        if g.contains_var(z) {
            return Err(Error::Factorization(format!("{zname} occurs in g")));
        }
        let n = phi.rows();
        let residual = phi.try_mul(&phi)?.try_add(&PolyMatrix::scalar(&g, n))?;
        if let Some((i, j, r)) = first_nonzero(&residual) {
            return Err(Error::Factorization(format!(
                "phi^2 + g*id is nonzero: entry {r} at ({}, {}); residual matrix {residual}",
                i + 1,
                j + 1
            )));
        }
        let zid = PolyMatrix::scalar(&Polynomial::var(&ring, z), n);
        let f = &Polynomial::var(&ring, z).pow(2) + &g;
        let pair = MatrixFactorization::new(zid.try_sub(&phi)?, zid.try_add(&phi)?, f)?;
        Ok(ZFormFactorization { phi, g, z, pair })
    }

    /// Looks `z` up by name.
    pub fn with_z_named(phi: PolyMatrix, g: Polynomial, z: &str) -> Result<ZFormFactorization> {
        let idx = phi
            .ring()
            .var_index(z)
            .ok_or_else(|| Error::Argument(format!("ring has no variable `{z}`")))?;
        ZFormFactorization::new(phi, g, idx)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.phi.ring()
    }

    pub fn phi(&self) -> &PolyMatrix {
        &self.phi
    }

    pub fn g(&self) -> &Polynomial {
        &self.g
    }

    pub fn z(&self) -> usize {
        self.z
    }

    pub fn rank(&self) -> usize {
        self.phi.rows()
    }

    /// `z^2 + g`.
    pub fn hypersurface(&self) -> &Polynomial {
        self.pair.f()
    }

    /// `z id - phi`; its cokernel is the module.
    pub fn minus(&self) -> &PolyMatrix {
        self.pair.a()
    }

    /// `z id + phi`.
    pub fn plus(&self) -> &PolyMatrix {
        self.pair.b()
    }

    pub fn pair(&self) -> &MatrixFactorization {
        &self.pair
    }

    /// The factorization built from `phi^T`.
    pub fn transpose(&self) -> ZFormFactorization {
        ZFormFactorization::new(self.phi.transpose(), self.g.clone(), self.z)
            .expect("transpose of a valid factorization is valid")
    }

    fn check_ring(&self, ctx: &RingContext) -> Result<()> {
        if !same_ring(ctx.ring(), self.ring()) {
            return Err(Error::Context("factorization and ring use different variables".into()));
        }
        let want = crate::groebner::buchberger(std::slice::from_ref(self.hypersurface()), MonomialOrder::GrevLex);
        if ctx.defining_gb() != want.as_slice() {
            return Err(Error::Context(format!(
                "ring is not defined by {}",
                self.hypersurface()
            )));
        }
        Ok(())
    }

    /// Trace ideal of `coker(z id - phi)` over `S/(z^2 + g)`: the ideal of
    /// the entries of `z id + phi`.
    pub fn trace_ideal_cor(&self, ctx: &Arc<RingContext>) -> Result<Ideal> {
        self.check_ring(ctx)?;
        Ideal::new(ctx, entries(self.plus()))
    }

    /// The ideal of the entries of `z id - phi`.
    pub fn minus_entry_ideal(&self, ctx: &Arc<RingContext>) -> Result<Ideal> {
        self.check_ring(ctx)?;
        Ideal::new(ctx, entries(self.minus()))
    }

    /// Whether `ker(z id - phi) = im(z id + phi)` as submodules of `R^n`.
    pub fn ker_image_check(&self, ctx: &Arc<RingContext>) -> Result<bool> {
        self.check_ring(ctx)?;
        let ring = self.ring();
        let kernel = kernel_over_quotient(self.minus(), ctx)?;
        let image: Vec<FreeModuleVector> = (0..self.rank())
            .map(|j| FreeModuleVector::new(ring, self.plus().column(j)))
            .collect::<Result<_>>()?;
        let (ker_mod, im_mod) = (Submodule::new(&kernel, ctx)?, Submodule::new(&image, ctx)?);
        Ok(image.iter().all(|v| ker_mod.contains(v)) && kernel.iter().all(|v| im_mod.contains(v)))
    }

    /// Whether the columns of `z id - phi` have no syzygies over the ambient
    /// polynomial ring.
    pub fn ambient_kernel_is_trivial(&self) -> Result<bool> {
        let ring = self.ring();
        let cols: Vec<FreeModuleVector> = (0..self.rank())
            .map(|j| FreeModuleVector::new(ring, self.minus().column(j)))
            .collect::<Result<_>>()?;
        Ok(syzygy_basis(&cols, &ModuleOrder::default())?.is_empty())
    }
}

fn entries(m: &PolyMatrix) -> Vec<Polynomial> {
    m.entries().iter().filter(|e| !e.is_zero()).cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_matrix;

    fn setup(spec: &str) -> Arc<RingContext> {
        RingContext::parse(spec).unwrap()
    }

    fn zf(ctx: &Arc<RingContext>, phi: &str, g: &str, z: &str) -> Result<ZFormFactorization> {
        let phi = parse_matrix(phi, ctx.ring()).unwrap();
        ZFormFactorization::with_z_named(phi, ctx.poly(g).unwrap(), z)
    }

    #[test]
    fn verification() {
        let r = setup("x,y,z;QQ;");
        let f = r.poly("x^3 + y*z").unwrap();
        let a = PolyMatrix::from_rows(r.ring(), vec![vec![f.clone()]]).unwrap();
        let one = PolyMatrix::identity(r.ring(), 1);
        assert!(verify_factorization(&a, &one, &f).unwrap().is_valid());

        let z = parse_matrix("[[z]]", r.ring()).unwrap();
        let v = verify_factorization(&z, &z, &r.poly("z^2+x^3").unwrap()).unwrap();
        assert_eq!(
            v,
            Verdict::Invalid {
                product: Product::AB,
                row: 0,
                col: 0,
                residual: r.poly("-x^3").unwrap()
            }
        );
        let wide = PolyMatrix::zero(r.ring(), 1, 2);
        assert!(verify_factorization(&wide, &wide, &f).is_err());
    }

    #[test]
    fn zform_validation() {
        let r = setup("x,y,z;QQi;z^2+x^2*y");
        assert!(zf(&r, "[[0,-y];[x^2,0]]", "x^2*y", "z").is_ok());
        assert!(zf(&r, "[[i*x]]", "x^2", "z").is_ok());
        let err = zf(&r, "[[x]]", "x^2", "z").unwrap_err().to_string();
        assert!(err.contains("2*x^2"), "{err}");
        assert!(zf(&r, "[[z]]", "-1", "z").is_err());
    }

    #[test]
    fn entry_trace() {
        let a5 = setup("x,y;QQ;y^2+x^5");
        let f = zf(&a5, "[[0,-x^3];[x^2,0]]", "x^5", "y").unwrap();
        assert_eq!(f.trace_ideal_cor(&a5).unwrap(), a5.ideal("(x^2, y)").unwrap());

        let e7 = setup("x,y,z;QQ;z^2+x^3+x*y^3");
        let f = zf(&e7, "[[0, y^3+x^2];[-x, 0]]", "x^3+x*y^3", "z").unwrap();
        assert_eq!(f.trace_ideal_cor(&e7).unwrap().to_string(), "(x, y^3, z)");
        assert!(f.trace_ideal_cor(&a5).is_err());
    }

    #[test]
    fn kernel_equals_image() {
        let ainf = setup("x,y;QQ;y^2");
        let f = zf(&ainf, "[[0]]", "0", "y").unwrap();
        assert!(f.ker_image_check(&ainf).unwrap());
        let line = setup("z;QQ;z^2-1");
        let f = zf(&line, "[[1]]", "-1", "z").unwrap();
        assert!(f.ker_image_check(&line).unwrap());
        assert!(f.ambient_kernel_is_trivial().unwrap());
    }

    #[test]
    fn transposes() {
        let r = setup("x,y,z;QQi;z^2+x^3+y^4");
        let f = zf(&r, "[[i*y^2, -x];[x^2, -i*y^2]]", "x^3+y^4", "z").unwrap();
        let t = f.transpose();
        assert_eq!(t.phi(), &parse_matrix("[[i*y^2, x^2];[-x, -i*y^2]]", r.ring()).unwrap());
        assert_eq!(t.transpose(), f);
        assert_eq!(t.trace_ideal_cor(&r).unwrap(), f.trace_ideal_cor(&r).unwrap());
        let sym = zf(&r, "[[0, x]; [x, 0]]", "-x^2", "z").unwrap();
        assert_eq!(sym.transpose(), sym);
    }
}
