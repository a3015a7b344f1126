//! Exact arithmetic foundation: big rationals, the quadratic extension
//! Q(sqrt(t)), polynomials in the spectral parameter, and their
//! symbolic-dimension presentation.

mod lambda_poly;
mod mpoly;
mod quadext;
mod rat;

pub use lambda_poly::{cauchy_root_bound, LambdaPoly, RationalEvaluator};
pub use mpoly::{interpolate_m, DimPoly, MCoeffPoly, DEFAULT_M_DEGREE};
pub use quadext::{quadext_arith, ArithOp, QuadExt};
pub use rat::Rat;
