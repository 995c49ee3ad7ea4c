//! Exact scalars, multigraded polynomials, parsing and dense linear algebra.

mod ambient;
pub mod forms;
pub mod gcd;
pub mod linalg;
mod mono;
mod parse;
mod poly;
mod scalar;

pub use ambient::{Ambient, Factor, MAX_VARS};
pub use forms::{canonical_span, monomials_of_degree, vanishing_forms};
pub use mono::Mono;
pub use poly::{grlex_cmp, jacobian, Multidegree, MultiPoly};
pub use scalar::Scalar;
