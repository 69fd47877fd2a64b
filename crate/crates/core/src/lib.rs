//! Exact computation of trace ideals of maximal Cohen-Macaulay modules over
//! quotients of polynomial rings.
//!
//! The crate is layered bottom-up:
//!
//! * [`poly`]: coefficient fields (`Q`, `Q(i)`, `F_p`), monomial orders and
//!   polynomial arithmetic;
//! * [`groebner`]: Buchberger's algorithm for ideals and for submodules of
//!   free modules, normal forms and syzygies;
//! * [`ideal`]: ideals of a quotient ring `k[x]/Q` (sum, intersection,
//!   quotient, equality, radical membership);
//! * [`matfac`]: matrix factorizations `(z id - phi, z id + phi)` of
//!   `z^2 + g` and the trace ideal read off from the entries of `z id + phi`;
//! * [`trace`]: the independent trace ideal computed from `Hom(M, R)` as the
//!   kernel of the transposed presentation matrix, and the MCM test ideal;
//! * [`catalog`]: the ADE rings and their matrix factorizations, with the
//!   claimed ideals, as auditable data files.

pub mod catalog;
mod error;
pub mod groebner;
pub mod ideal;
pub mod matfac;
pub mod matrix;
pub mod parse;
pub mod poly;
pub mod trace;

pub use error::{Error, Result};
pub use groebner::{FreeModuleVector, ModuleOrder, PositionTie};
pub use ideal::{Ideal, RingContext};
pub use matfac::{MatrixFactorization, ZFormFactorization};
pub use matrix::PolyMatrix;
pub use poly::{Field, FieldElement, Monomial, MonomialOrder, PolyRing, Polynomial};
pub use trace::{McmModule, ModulePresentation};
